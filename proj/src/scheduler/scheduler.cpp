#include "flpe/scheduler/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_set>

namespace flpe
{

namespace
{

bool touches( const event& e, process_id victim )
{
    if ( const auto* d = std::get_if< deliver_event >( &e ) )
        return d->msg.src == victim || d->msg.dst == victim;
    if ( const auto* s = std::get_if< start_event >( &e ) )
        return s->process == victim;
    if ( const auto* t = std::get_if< timeout_event >( &e ) )
        return t->process == victim;
    return false;
}

std::optional< event > planned_crash_at( const std::vector< planned_crash >& plan, std::size_t step,
                                         const std::vector< event >& enabled )
{
    for ( const auto& pc : plan )
    {
        if ( pc.step != step )
            continue;
        const event e = crash_event{ pc.process };
        if ( std::find( enabled.begin(), enabled.end(), e ) != enabled.end() )
            return e;
    }
    return std::nullopt;
}

} // namespace

adversary adversary::seeded_random( std::uint64_t seed, crash_budget budget )
{
    return { adversary_kind::seeded_random, seed, {}, std::move( budget ), std::nullopt };
}

adversary adversary::exhaustive( crash_budget budget )
{
    return { adversary_kind::exhaustive, 0, {}, std::move( budget ), std::nullopt };
}

adversary adversary::targeted_delay( process_id victim, std::uint64_t seed, crash_budget budget )
{
    return { adversary_kind::targeted_delay, seed, victim, std::move( budget ), std::nullopt };
}

execution run( const system_topology& topology, const configuration& initial, const protocol& consensus,
               const adversary& adv, std::size_t step_bound )
{
    std::mt19937_64 rng{ adv.seed };
    execution ex{ topology, initial, {}, false };

    for ( std::size_t step = 0;; ++step )
    {
        const auto& current = ex.final_config();
        const auto enabled = enabled_events( current, topology, consensus, adv.budget );
        if ( enabled.empty() )
            break;
        if ( step >= step_bound )
        {
            ex.truncated = true;
            break;
        }

        std::optional< event > chosen;
        std::vector< event > candidates;
        if ( adv.crash_plan )
        {
            chosen = planned_crash_at( *adv.crash_plan, step, enabled );
            for ( const auto& e : enabled )
                if ( !std::holds_alternative< crash_event >( e ) )
                    candidates.push_back( e );
        }
        else
            candidates = enabled;

        if ( !chosen )
        {
            if ( adv.kind == adversary_kind::targeted_delay )
            {
                std::vector< event > preferred;
                for ( const auto& e : candidates )
                    if ( !touches( e, adv.victim ) )
                        preferred.push_back( e );
                if ( !preferred.empty() )
                    candidates = std::move( preferred );
            }
            if ( candidates.empty() )
                break;
            if ( adv.kind == adversary_kind::exhaustive )
                chosen = candidates.front();
            else
                chosen = candidates[ rng() % candidates.size() ];
        }

        auto next = apply_event( current, *chosen, topology, consensus );
        ex.steps.push_back( { *chosen, std::move( next ) } );
    }
    return ex;
}

std::set< property_profile > exploration_result::profiles() const
{
    std::set< property_profile > out;
    for ( const auto& [ p, w ] : witnesses )
        out.insert( p );
    return out;
}

exploration_result explore( const system_topology& topology, const configuration& initial,
                            const protocol& consensus, const crash_budget& budget, const explore_options& options )
{
    const auto successors = [ & ]( const configuration& config ) {
        auto enabled = enabled_events( config, topology, consensus, budget );
        if ( options.crash_started_only )
            std::erase_if( enabled, [ & ]( const event& e ) {
                const auto* c = std::get_if< crash_event >( &e );
                return c && !config.state( c->process ).started;
            } );
        return enabled;
    };

    struct node
    {
        std::uint32_t parent;
        std::uint32_t event_index;
    };
    constexpr auto root = std::numeric_limits< std::uint32_t >::max();

    exploration_result result;
    result.depth_bound = options.depth_bound;

    std::vector< node > nodes{ { root, 0 } };
    std::unordered_set< digest, digest_hash > seen{ config_digest( initial ) };
    std::vector< std::pair< std::uint32_t, configuration > > frontier{ { 0, initial } };
    std::map< property_profile, std::uint32_t > witness_nodes;

    for ( std::size_t depth = 0; !frontier.empty() && !result.partial; ++depth )
    {
        std::vector< std::pair< std::uint32_t, configuration > > next;
        for ( const auto& [ id, config ] : frontier )
        {
            const auto enabled = successors( config );
            if ( enabled.empty() )
            {
                ++result.terminal_states;
                witness_nodes.emplace( profile_of( config, topology ), id );
                continue;
            }
            if ( depth >= options.depth_bound )
            {
                ++result.truncated_states;
                continue;
            }
            for ( std::uint32_t i = 0; i < enabled.size(); ++i )
            {
                auto successor = apply_event( config, enabled[ i ], topology, consensus );
                if ( !seen.insert( config_digest( successor ) ).second )
                    continue;
                if ( seen.size() > options.state_cap )
                {
                    result.partial = true;
                    break;
                }
                nodes.push_back( { id, i } );
                next.emplace_back( static_cast< std::uint32_t >( nodes.size() - 1 ), std::move( successor ) );
            }
            if ( result.partial )
                break;
        }
        frontier = std::move( next );
    }
    result.visited = seen.size();

    for ( const auto& [ profile, id ] : witness_nodes )
    {
        std::vector< std::uint32_t > path;
        for ( auto n = id; nodes[ n ].parent != root; n = nodes[ n ].parent )
            path.push_back( nodes[ n ].event_index );
        std::reverse( path.begin(), path.end() );

        execution ex{ topology, initial, {}, false };
        for ( auto index : path )
        {
            const auto enabled = successors( ex.final_config() );
            auto next = apply_event( ex.final_config(), enabled.at( index ), topology, consensus );
            ex.steps.push_back( { enabled[ index ], std::move( next ) } );
        }
        result.witnesses.emplace( profile, std::move( ex ) );
    }
    return result;
}

admissibility_report check_admissible( const execution& ex )
{
    admissibility_report r;
    const auto& last = ex.final_config();
    r.fault_count = last.crashed_count();
    for ( const auto& m : last.in_flight )
        if ( !last.state( m.dst ).crashed )
            r.undelivered_to_correct.push_back( m );
    r.advisory = ex.truncated;
    r.admissible = r.undelivered_to_correct.empty() && r.fault_count <= 1;
    return r;
}

} // namespace flpe
