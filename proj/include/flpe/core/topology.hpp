#pragma once

#include "flpe/core/types.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace flpe
{

// The system graph plus the oracle hierarchy. Level 0 processes take part in
// consensus; a level n oracle monitors a process of level n - 1.
class system_topology
{
    std::vector< unsigned > levels_;
    std::vector< std::optional< process_id > > targets_;
    std::set< std::pair< std::uint32_t, std::uint32_t > > channels_;

public:
    // Complete graph over n ordinary processes.
    [[nodiscard]] static system_topology complete( std::size_t n );

    [[nodiscard]] std::size_t size() const { return levels_.size(); }
    [[nodiscard]] bool contains( process_id p ) const { return p.index < levels_.size(); }

    // Self-delivery is always possible; it does not need an edge.
    [[nodiscard]] bool has_channel( process_id a, process_id b ) const;
    // Directed channels, loopback excluded.
    [[nodiscard]] std::size_t channel_count() const { return channels_.size(); }

    [[nodiscard]] unsigned oracle_level( process_id p ) const { return levels_.at( p.index ); }
    [[nodiscard]] bool is_oracle( process_id p ) const { return oracle_level( p ) > 0; }
    [[nodiscard]] std::optional< process_id > oracle_target( process_id p ) const { return targets_.at( p.index ); }
    [[nodiscard]] unsigned max_level() const;

    [[nodiscard]] std::vector< process_id > processes() const;
    [[nodiscard]] std::vector< process_id > ordinary_processes() const;
    [[nodiscard]] std::vector< process_id > oracles() const;
    [[nodiscard]] std::vector< process_id > at_level( unsigned level ) const;

    // Processes reachable by following oracle targets from `oracle`, nearest first.
    [[nodiscard]] std::vector< process_id > monitoring_chain( process_id oracle ) const;

    bool operator==( const system_topology& ) const = default;

    friend system_topology add_oracle( const system_topology& topology, process_id target );
};

// Returns the topology with one more oracle monitoring `target`, connected to
// every existing process. Throws topology_error for an unknown target.
[[nodiscard]] system_topology add_oracle( const system_topology& topology, process_id target );

// One oracle per known-faulty process.
[[nodiscard]] system_topology build_hierarchy( const system_topology& topology,
                                               const std::set< process_id >& known_faulty );

struct built_system
{
    system_topology topology;
    configuration initial;
};

// Complete graph with n ordinary processes holding `values`.
[[nodiscard]] built_system build_system( std::size_t n, const std::vector< value >& values );

// Fresh initial configuration for every process of `topology`. Ordinary
// processes take their value from `values`; oracles start already running.
[[nodiscard]] configuration initial_configuration( const system_topology& topology,
                                                   const std::vector< value >& values );

} // namespace flpe
