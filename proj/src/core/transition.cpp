#include "flpe/core/transition.hpp"

#include "flpe/core/errors.hpp"
#include "flpe/protocols/protocols.hpp"

#include <algorithm>
#include <cstdio>

namespace flpe
{

namespace
{

bool crash_allowed( const configuration& config, const system_topology& topology, const crash_budget& budget,
                    process_id p )
{
    if ( config.state( p ).crashed || budget.immune.contains( p ) )
        return false;
    if ( config.crashed_count() >= budget.total )
        return false;
    if ( budget.level_caps.empty() )
        return true;
    const unsigned level = topology.oracle_level( p );
    const std::size_t cap = level < budget.level_caps.size() ? budget.level_caps[ level ] : 0;
    std::size_t used = 0;
    for ( const auto& s : config.states )
        if ( s.crashed && topology.oracle_level( s.id ) == level )
            ++used;
    return used < cap;
}

bool timeout_enabled_for( const configuration& config, const system_topology& topology, const protocol& consensus,
                          process_id p )
{
    if ( !consensus.timeouts_enabled() || topology.is_oracle( p ) )
        return false;
    const auto& s = config.state( p );
    if ( s.crashed || !s.started || s.decision )
        return false;
    return consensus.timeout_armed( handler_context{ topology, config }, s );
}

void apply_actions( configuration& config, const system_topology& topology, process_id p, actions&& acts )
{
    auto& self = config.state( p );
    if ( acts.locals )
        self.locals = std::move( *acts.locals );
    if ( acts.decide )
    {
        if ( self.decision )
            throw scheduler_contract_violation{ "handler tried to decide twice at p" + std::to_string( p.index ) };
        self.decision = acts.decide;
    }
    for ( auto& m : acts.sends )
    {
        m.src = p;
        m.seq = self.next_seq++;
        if ( !topology.has_channel( m.src, m.dst ) )
            throw scheduler_contract_violation{ "send on missing channel " + std::to_string( m.src.index ) + "->" +
                                                std::to_string( m.dst.index ) };
        auto pos = std::upper_bound( config.in_flight.begin(), config.in_flight.end(), m, canonical_less );
        config.in_flight.insert( pos, std::move( m ) );
    }
}

// FNV-1a in two lanes with distinct offsets, finished with a splitmix step.
class hasher
{
    std::uint64_t a_ = 0xcbf29ce484222325ULL;
    std::uint64_t b_ = 0x84222325cbf29ce4ULL;

    static std::uint64_t mix( std::uint64_t z )
    {
        z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ULL;
        z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebULL;
        return z ^ ( z >> 31 );
    }

public:
    void add( std::uint64_t v )
    {
        for ( int i = 0; i < 8; ++i )
        {
            const auto byte = static_cast< std::uint8_t >( v >> ( 8 * i ) );
            a_ = ( a_ ^ byte ) * 0x100000001b3ULL;
            b_ = ( b_ ^ static_cast< std::uint8_t >( byte + 0x5b ) ) * 0x100000001b3ULL;
        }
    }

    void add_opt( const std::optional< value >& v )
    {
        add( v ? 1 : 0 );
        add( v ? static_cast< std::uint64_t >( static_cast< std::int64_t >( v->payload ) ) : 0 );
    }

    [[nodiscard]] digest finish() const { return { mix( a_ ), mix( b_ ^ 0x2545f4914f6cdd1dULL ) }; }
};

} // namespace

const protocol& handler_for( const system_topology& topology, process_id p, const protocol& consensus )
{
    return topology.is_oracle( p ) ? protocols::oracle_behavior_ref() : consensus;
}

std::vector< event > enabled_events( const configuration& config, const system_topology& topology,
                                     const protocol& consensus, const crash_budget& budget )
{
    std::vector< event > out;
    for ( const auto& s : config.states )
        if ( !s.crashed && !s.started )
            out.emplace_back( start_event{ s.id } );
    for ( const auto& m : config.in_flight )
        if ( !config.state( m.dst ).crashed )
            out.emplace_back( deliver_event{ m } );
    for ( const auto& s : config.states )
        if ( timeout_enabled_for( config, topology, consensus, s.id ) )
            out.emplace_back( timeout_event{ s.id } );
    if ( out.empty() )
        return out;
    for ( const auto& s : config.states )
        if ( crash_allowed( config, topology, budget, s.id ) )
            out.emplace_back( crash_event{ s.id } );
    return out;
}

configuration apply_event( const configuration& config, const event& e, const system_topology& topology,
                           const protocol& consensus )
{
    configuration next = config;

    if ( const auto* st = std::get_if< start_event >( &e ) )
    {
        const auto p = st->process;
        if ( !topology.contains( p ) || config.state( p ).crashed || config.state( p ).started )
            throw scheduler_contract_violation{ "start not enabled: " + describe( e ) };
        next.state( p ).started = true;
        auto acts = handler_for( topology, p, consensus ).on_init( { topology, config }, next.state( p ) );
        apply_actions( next, topology, p, std::move( acts ) );
        return next;
    }

    if ( const auto* d = std::get_if< deliver_event >( &e ) )
    {
        auto it = std::find( next.in_flight.begin(), next.in_flight.end(), d->msg );
        if ( it == next.in_flight.end() || !topology.contains( d->msg.dst ) || config.state( d->msg.dst ).crashed )
            throw scheduler_contract_violation{ "deliver not enabled: " + describe( e ) };
        next.in_flight.erase( it );
        const auto p = d->msg.dst;
        auto acts = handler_for( topology, p, consensus ).on_message( { topology, config }, config.state( p ), d->msg );
        apply_actions( next, topology, p, std::move( acts ) );
        return next;
    }

    if ( const auto* t = std::get_if< timeout_event >( &e ) )
    {
        const auto p = t->process;
        if ( !topology.contains( p ) || !timeout_enabled_for( config, topology, consensus, p ) )
            throw scheduler_contract_violation{ "timeout not enabled: " + describe( e ) };
        auto acts = consensus.on_timeout( { topology, config }, config.state( p ) );
        apply_actions( next, topology, p, std::move( acts ) );
        return next;
    }

    const auto& c = std::get< crash_event >( e );
    if ( !topology.contains( c.process ) || config.state( c.process ).crashed )
        throw scheduler_contract_violation{ "crash not enabled: " + describe( e ) };
    next.state( c.process ).crashed = true;
    return next;
}

std::string digest::hex() const
{
    char buf[ 33 ];
    std::snprintf( buf, sizeof buf, "%016llx%016llx", static_cast< unsigned long long >( hi ),
                   static_cast< unsigned long long >( lo ) );
    return buf;
}

digest config_digest( const configuration& config )
{
    hasher h;
    h.add( config.states.size() );
    for ( const auto& s : config.states )
    {
        h.add( s.id.index );
        h.add( static_cast< std::uint64_t >( static_cast< std::int64_t >( s.initial_value.payload ) ) );
        h.add_opt( s.decision );
        h.add( ( s.crashed ? 1U : 0U ) | ( s.started ? 2U : 0U ) | ( s.locals.view_sent ? 4U : 0U ) );
        h.add( s.next_seq );
        const auto& l = s.locals;
        h.add( l.values.size() );
        for ( const auto& v : l.values )
            h.add_opt( v );
        h.add( l.views.size() );
        for ( const auto& v : l.views )
        {
            h.add( v ? 1 : 0 );
            h.add( v.value_or( 0 ) );
        }
        h.add( l.reported_crashed );
        h.add( l.outstanding );
        h.add( l.dummies_pending );
        h.add_opt( l.deferred );
    }
    h.add( config.in_flight.size() );
    for ( const auto& m : config.in_flight )
    {
        h.add( m.src.index );
        h.add( m.dst.index );
        h.add( static_cast< std::uint64_t >( m.kind ) );
        h.add( m.seq );
        h.add( m.body.index() );
        if ( const auto* v = std::get_if< value >( &m.body ) )
            h.add( static_cast< std::uint64_t >( static_cast< std::int64_t >( v->payload ) ) );
        else if ( const auto* cv = std::get_if< crash_verdict >( &m.body ) )
            h.add( ( static_cast< std::uint64_t >( cv->subject.index ) << 1 ) | ( cv->crashed ? 1 : 0 ) );
        else if ( const auto* ks = std::get_if< known_set >( &m.body ) )
            h.add( ks->mask );
    }
    return h.finish();
}

std::vector< event > execution::events() const
{
    std::vector< event > out;
    out.reserve( steps.size() );
    for ( const auto& s : steps )
        out.push_back( s.ev );
    return out;
}

execution replay( const system_topology& topology, const configuration& initial, const protocol& consensus,
                  const crash_budget& budget, const std::vector< event >& events )
{
    execution ex{ topology, initial, {}, false };
    for ( const auto& e : events )
    {
        const auto& current = ex.final_config();
        const auto enabled = enabled_events( current, topology, consensus, budget );
        if ( std::find( enabled.begin(), enabled.end(), e ) == enabled.end() )
            throw scheduler_contract_violation{ "replayed event not enabled: " + describe( e ) };
        auto next = apply_event( current, e, topology, consensus );
        ex.steps.push_back( { e, std::move( next ) } );
    }
    return ex;
}

} // namespace flpe
