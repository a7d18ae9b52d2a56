#pragma once

#include "flpe/core/protocol.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace flpe::protocols::detail
{

inline std::size_t ordinary_count( const system_topology& topology )
{
    return topology.at_level( 0 ).size();
}

inline std::uint64_t bit( process_id p ) { return std::uint64_t{ 1 } << p.index; }

inline protocol_locals sized_locals( const process_state& self, std::size_t n )
{
    protocol_locals l = self.locals;
    if ( l.values.size() < n )
        l.values.resize( n );
    if ( l.views.size() < n )
        l.views.resize( n );
    return l;
}

inline std::size_t recorded_count( const protocol_locals& l )
{
    return static_cast< std::size_t >(
        std::count_if( l.values.begin(), l.values.end(), []( const auto& v ) { return v.has_value(); } ) );
}

inline std::optional< value > min_recorded( const protocol_locals& l )
{
    std::optional< value > best;
    for ( const auto& v : l.values )
        if ( v && ( !best || *v < *best ) )
            best = v;
    return best;
}

inline message make_message( process_id dst, message_kind kind, message_body body = {} )
{
    message m;
    m.dst = dst;
    m.kind = kind;
    m.body = body;
    return m;
}

// Own value plus a value announcement to every other ordinary process.
inline void announce_value( const system_topology& topology, const process_state& self, protocol_locals& locals,
                            actions& out )
{
    locals.values.at( self.id.index ) = self.initial_value;
    for ( const auto& q : topology.at_level( 0 ) )
        if ( q != self.id )
            out.sends.push_back( make_message( q, message_kind::value_announce, self.initial_value ) );
}

} // namespace flpe::protocols::detail
