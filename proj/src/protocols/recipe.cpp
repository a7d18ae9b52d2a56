#include "flpe/core/errors.hpp"
#include "flpe/protocols/protocols.hpp"

#include <charconv>

namespace flpe::protocols
{

namespace
{

bool consume( std::string_view& text, std::string_view prefix )
{
    if ( !text.starts_with( prefix ) )
        return false;
    text.remove_prefix( prefix.size() );
    return true;
}

} // namespace

protocol_recipe protocol_recipe::parse( std::string_view key )
{
    const std::string original{ key };
    protocol_recipe r;
    if ( consume( key, "p0" ) )
        r.base = base_kind::floodmin;
    else if ( consume( key, "p1" ) )
        r.base = base_kind::forced;
    else if ( consume( key, "p3:" ) )
    {
        r.base = base_kind::paraconsistent;
        const auto end = key.find( '-' );
        try
        {
            r.logic = logic::logic_id::parse( key.substr( 0, end ) );
        }
        catch ( const parse_error& )
        {
            throw configuration_error{ "unknown logic in protocol key '" + original + "'" };
        }
        if ( !r.logic.paraconsistent() )
            throw configuration_error{ "p3 needs a paraconsistent logic: '" + original + "'" };
        key.remove_prefix( end == std::string_view::npos ? key.size() : end );
    }
    else
        throw configuration_error{ "unknown protocol key '" + original + "'" };

    if ( consume( key, "-oracle" ) )
        r.oracle_guarded = true;
    if ( consume( key, "-padded:" ) )
    {
        const auto* first = key.data();
        const auto* last = key.data() + key.size();
        auto [ ptr, ec ] = std::from_chars( first, last, r.padding );
        if ( ec != std::errc{} || ptr == first )
            throw configuration_error{ "bad padding in protocol key '" + original + "'" };
        key.remove_prefix( static_cast< std::size_t >( ptr - first ) );
    }
    if ( !key.empty() )
        throw configuration_error{ "unknown protocol key '" + original + "'" };
    return r;
}

std::string protocol_recipe::key() const
{
    std::string out;
    switch ( base )
    {
    case base_kind::floodmin: out = "p0"; break;
    case base_kind::forced: out = "p1"; break;
    case base_kind::paraconsistent: out = "p3:" + logic.name(); break;
    }
    if ( oracle_guarded )
        out += "-oracle";
    if ( padding > 0 )
        out += "-padded:" + std::to_string( padding );
    return out;
}

protocol_ptr protocol_recipe::build( const system_topology& topology ) const
{
    protocol_ptr p;
    switch ( base )
    {
    case base_kind::floodmin: p = floodmin(); break;
    case base_kind::forced:
        if ( quorum > topology.at_level( 0 ).size() )
            throw configuration_error{ "timeout quorum exceeds the number of processes" };
        p = forced_floodmin( quorum );
        break;
    case base_kind::paraconsistent: p = paraconsistent_floodmin( logic ); break;
    }
    if ( oracle_guarded )
    {
        const auto oracles = topology.oracles();
        p = augment_with_oracle( p, { oracles.begin(), oracles.end() } );
    }
    return pad_with_dummies( p, padding );
}

} // namespace flpe::protocols
