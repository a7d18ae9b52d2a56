#include "flpe/logic/logic_id.hpp"

#include "flpe/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace flpe::logic
{

logic_id logic_id::cn( unsigned n )
{
    if ( n < 1 || n > max_cn_level )
        throw configuration_error{ "da Costa level must be within 1.." + std::to_string( max_cn_level ) };
    return { logic_family::cn, n };
}

logic_id logic_id::parse( std::string_view text )
{
    std::string lower{ text };
    std::transform( lower.begin(), lower.end(), lower.begin(),
                    []( unsigned char c ) { return static_cast< char >( std::tolower( c ) ); } );
    if ( lower == "cpl" )
        return cpl();
    if ( lower == "mbc" )
        return mbc();
    if ( lower.size() > 1 && lower.front() == 'c' )
    {
        unsigned n = 0;
        const auto* first = lower.data() + 1;
        const auto* last = lower.data() + lower.size();
        auto [ ptr, ec ] = std::from_chars( first, last, n );
        if ( ec == std::errc{} && ptr == last && n >= 1 && n <= max_cn_level )
            return cn( n );
    }
    throw parse_error{ "unknown logic '" + std::string{ text } + "'", 0 };
}

std::string logic_id::name() const
{
    switch ( family )
    {
    case logic_family::cpl: return "cpl";
    case logic_family::mbc: return "mbc";
    case logic_family::cn: return "c" + std::to_string( level );
    }
    return "?";
}

} // namespace flpe::logic
