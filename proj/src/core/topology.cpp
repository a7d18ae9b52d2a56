#include "flpe/core/topology.hpp"

#include "flpe/core/errors.hpp"

#include <algorithm>
#include <string>

namespace flpe
{

system_topology system_topology::complete( std::size_t n )
{
    if ( n > max_processes )
        throw topology_error{ "at most " + std::to_string( max_processes ) + " processes are supported" };
    system_topology t;
    t.levels_.assign( n, 0 );
    t.targets_.assign( n, std::nullopt );
    for ( std::uint32_t a = 0; a < n; ++a )
        for ( std::uint32_t b = 0; b < n; ++b )
            if ( a != b )
                t.channels_.emplace( a, b );
    return t;
}

bool system_topology::has_channel( process_id a, process_id b ) const
{
    if ( !contains( a ) || !contains( b ) )
        return false;
    return a == b || channels_.contains( { a.index, b.index } );
}

unsigned system_topology::max_level() const
{
    return levels_.empty() ? 0 : *std::max_element( levels_.begin(), levels_.end() );
}

std::vector< process_id > system_topology::processes() const
{
    std::vector< process_id > out;
    for ( std::uint32_t i = 0; i < levels_.size(); ++i )
        out.push_back( { i } );
    return out;
}

std::vector< process_id > system_topology::at_level( unsigned level ) const
{
    std::vector< process_id > out;
    for ( std::uint32_t i = 0; i < levels_.size(); ++i )
        if ( levels_[ i ] == level )
            out.push_back( { i } );
    return out;
}

std::vector< process_id > system_topology::ordinary_processes() const { return at_level( 0 ); }

std::vector< process_id > system_topology::oracles() const
{
    std::vector< process_id > out;
    for ( std::uint32_t i = 0; i < levels_.size(); ++i )
        if ( levels_[ i ] > 0 )
            out.push_back( { i } );
    return out;
}

std::vector< process_id > system_topology::monitoring_chain( process_id oracle ) const
{
    std::vector< process_id > chain;
    auto next = oracle_target( oracle );
    while ( next )
    {
        chain.push_back( *next );
        next = oracle_target( *next );
    }
    return chain;
}

system_topology add_oracle( const system_topology& topology, process_id target )
{
    if ( !topology.contains( target ) )
        throw topology_error{ "unknown oracle target p" + std::to_string( target.index ) };
    if ( topology.size() + 1 > max_processes )
        throw topology_error{ "oracle would exceed " + std::to_string( max_processes ) + " processes" };

    system_topology out = topology;
    const auto id = static_cast< std::uint32_t >( topology.size() );
    out.levels_.push_back( topology.oracle_level( target ) + 1 );
    out.targets_.push_back( target );
    for ( std::uint32_t i = 0; i < id; ++i )
    {
        out.channels_.emplace( i, id );
        out.channels_.emplace( id, i );
    }
    return out;
}

system_topology build_hierarchy( const system_topology& topology, const std::set< process_id >& known_faulty )
{
    for ( const auto& p : known_faulty )
        if ( !topology.contains( p ) )
            throw topology_error{ "known-faulty process p" + std::to_string( p.index ) + " is not in the topology" };

    system_topology out = topology;
    for ( const auto& p : known_faulty )
        out = add_oracle( out, p );
    return out;
}

configuration initial_configuration( const system_topology& topology, const std::vector< value >& values )
{
    const auto ordinary = topology.ordinary_processes();
    if ( values.size() != ordinary.size() )
        throw configuration_error{ "expected " + std::to_string( ordinary.size() ) + " initial values, got " +
                                   std::to_string( values.size() ) };

    configuration c;
    std::size_t next_value = 0;
    for ( const auto& p : topology.processes() )
    {
        process_state s;
        s.id = p;
        if ( topology.is_oracle( p ) )
            s.started = true;
        else
            s.initial_value = values[ next_value++ ];
        c.states.push_back( std::move( s ) );
    }
    return c;
}

built_system build_system( std::size_t n, const std::vector< value >& values )
{
    if ( n == 0 )
        throw configuration_error{ "a system needs at least one process" };
    if ( values.size() != n )
        throw configuration_error{ "expected " + std::to_string( n ) + " initial values, got " +
                                   std::to_string( values.size() ) };
    auto topology = system_topology::complete( n );
    auto initial = initial_configuration( topology, values );
    return { std::move( topology ), std::move( initial ) };
}

} // namespace flpe
