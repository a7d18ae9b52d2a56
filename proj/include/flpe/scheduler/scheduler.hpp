#pragma once

#include "flpe/core/protocol.hpp"
#include "flpe/core/topology.hpp"
#include "flpe/core/transition.hpp"
#include "flpe/measurement/profile.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace flpe
{

struct planned_crash
{
    std::size_t step = 0;
    process_id process;

    bool operator==( const planned_crash& ) const = default;
};

enum class adversary_kind
{
    seeded_random,
    exhaustive,      // always the first enabled event
    targeted_delay,  // avoids events touching the victim while it can
};

struct adversary
{
    adversary_kind kind = adversary_kind::seeded_random;
    std::uint64_t seed = 0;
    process_id victim;
    crash_budget budget;
    // When present, crashes happen only here: at the given step, if enabled.
    std::optional< std::vector< planned_crash > > crash_plan;

    [[nodiscard]] static adversary seeded_random( std::uint64_t seed, crash_budget budget = {} );
    [[nodiscard]] static adversary exhaustive( crash_budget budget = {} );
    [[nodiscard]] static adversary targeted_delay( process_id victim, std::uint64_t seed, crash_budget budget = {} );
};

// Steps until no event is enabled or `step_bound` steps were taken.
[[nodiscard]] execution run( const system_topology& topology, const configuration& initial,
                             const protocol& consensus, const adversary& adv, std::size_t step_bound );

struct explore_options
{
    std::size_t depth_bound = 24;
    std::size_t state_cap = 5'000'000;
    // Offer crash events only for processes that have already started.
    bool crash_started_only = false;
};

struct exploration_result
{
    // Shortest witness per terminal profile.
    std::map< property_profile, execution > witnesses;
    std::size_t visited = 0;
    std::size_t terminal_states = 0;
    std::size_t truncated_states = 0;  // still had events at the depth bound
    bool partial = false;              // stopped at the state cap
    std::size_t depth_bound = 0;

    [[nodiscard]] std::set< property_profile > profiles() const;
};

// Breadth-first search over every schedule up to the depth bound,
// deduplicated by configuration digest.
[[nodiscard]] exploration_result explore( const system_topology& topology, const configuration& initial,
                                          const protocol& consensus, const crash_budget& budget,
                                          const explore_options& options = {} );

struct admissibility_report
{
    bool admissible = false;
    std::vector< message > undelivered_to_correct;
    std::size_t fault_count = 0;
    bool advisory = false;  // the execution was truncated
};

[[nodiscard]] admissibility_report check_admissible( const execution& ex );

} // namespace flpe
