#include "flpe/measurement/profile.hpp"

#include "flpe/core/errors.hpp"

#include <algorithm>

namespace flpe
{

namespace
{

char letter( bool b ) { return b ? 'T' : 'F'; }

} // namespace

std::string property_profile::to_string() const
{
    return { '(', letter( termination ), ',', letter( consistency ), ',', letter( non_triviality ), ')' };
}

property_profile property_profile::parse( std::string_view text )
{
    std::string letters;
    for ( char c : text )
    {
        if ( c == 'T' || c == 'F' )
            letters += c;
        else if ( c != '(' && c != ')' && c != ',' && c != ' ' )
            throw parse_error{ "bad profile '" + std::string{ text } + "'", 0 };
    }
    if ( letters.size() != 3 )
        throw parse_error{ "bad profile '" + std::string{ text } + "'", 0 };
    return { letters[ 0 ] == 'T', letters[ 1 ] == 'T', letters[ 2 ] == 'T' };
}

property_profile profile_of( const configuration& config, const system_topology& topology )
{
    property_profile p;
    std::vector< value > initials;
    std::vector< value > decided;
    for ( const auto& q : topology.ordinary_processes() )
    {
        const auto& s = config.state( q );
        initials.push_back( s.initial_value );
        if ( s.decision )
            decided.push_back( *s.decision );
        else if ( !s.crashed )
            p.termination = false;
    }
    p.consistency = std::adjacent_find( decided.begin(), decided.end(), std::not_equal_to<>{} ) == decided.end();
    p.non_triviality = std::all_of( decided.begin(), decided.end(), [ & ]( const value& v ) {
        return std::find( initials.begin(), initials.end(), v ) != initials.end();
    } );
    return p;
}

property_profile worst_profile( const std::set< property_profile >& profiles )
{
    property_profile w;
    for ( const auto& p : profiles )
    {
        w.termination = w.termination && p.termination;
        w.consistency = w.consistency && p.consistency;
        w.non_triviality = w.non_triviality && p.non_triviality;
    }
    return w;
}

std::string to_string( const std::set< property_profile >& profiles )
{
    std::string out;
    for ( const auto& p : profiles )
    {
        if ( !out.empty() )
            out += ';';
        out += p.to_string();
    }
    return out;
}

} // namespace flpe
