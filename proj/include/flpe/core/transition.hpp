#pragma once

#include "flpe/core/protocol.hpp"
#include "flpe/core/topology.hpp"
#include "flpe/core/types.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace flpe
{

// How many crashes the environment may inject. A crash of p is allowed when
// p is not immune, fewer than `total` processes have crashed, and (if level
// caps are given) fewer than level_caps[level(p)] processes of p's level have
// crashed. Levels beyond the caps vector have cap 0.
struct crash_budget
{
    std::size_t total = 0;
    std::vector< std::size_t > level_caps;
    std::set< process_id > immune;

    [[nodiscard]] static crash_budget uniform( std::size_t total ) { return { total, {}, {} }; }

    bool operator==( const crash_budget& ) const = default;
};

// Events enabled at `config`, in canonical order: start by pid, deliver by
// (src, seq, dst), timeout by pid, crash by pid. Crash events are only
// offered while some other event is enabled; a crash in a quiescent
// configuration cannot influence any process.
[[nodiscard]] std::vector< event > enabled_events( const configuration& config, const system_topology& topology,
                                                   const protocol& consensus, const crash_budget& budget );

// Applies one step. Throws scheduler_contract_violation when the event's
// preconditions do not hold in `config`.
[[nodiscard]] configuration apply_event( const configuration& config, const event& e,
                                         const system_topology& topology, const protocol& consensus );

// Handler that runs for process p: oracles always run the oracle behavior.
[[nodiscard]] const protocol& handler_for( const system_topology& topology, process_id p, const protocol& consensus );

struct digest
{
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    auto operator<=>( const digest& ) const = default;
    [[nodiscard]] std::string hex() const;
};

struct digest_hash
{
    std::size_t operator()( const digest& d ) const noexcept { return static_cast< std::size_t >( d.lo ^ ( d.hi * 0x9e3779b97f4a7c15ULL ) ); }
};

[[nodiscard]] digest config_digest( const configuration& config );

struct execution_step
{
    event ev;
    configuration config;
};

struct execution
{
    system_topology topology;
    configuration initial;
    std::vector< execution_step > steps;
    bool truncated = false;

    [[nodiscard]] const configuration& final_config() const { return steps.empty() ? initial : steps.back().config; }
    // Configuration index t: 0 is the initial configuration.
    [[nodiscard]] const configuration& config_at( std::size_t t ) const { return t == 0 ? initial : steps.at( t - 1 ).config; }
    [[nodiscard]] std::size_t length() const { return steps.size(); }
    [[nodiscard]] std::vector< event > events() const;
};

// Replays `events` from `initial`, checking each one is enabled.
[[nodiscard]] execution replay( const system_topology& topology, const configuration& initial,
                                const protocol& consensus, const crash_budget& budget,
                                const std::vector< event >& events );

} // namespace flpe
