#pragma once

#include "flpe/measurement/measurement.hpp"
#include "flpe/scheduler/scheduler.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flpe::harness
{

inline constexpr std::string_view scenario_magic = "flpe-scenario 1";

// A scenario file: the magic line, then `key = value` lines. Blank lines and
// lines starting with '#' are ignored.
//
//   name = p1_split
//   processes = 3
//   values = 0,1,1
//   protocol = p1
//   crash_budget = 1
//
// Further keys: timeout_quorum, known_faulty, oracle_depth, level_budget,
// adversary (random | exhaustive | delay:<pid>), seed, crash_plan
// (<step>:<pid>,...), step_bound, depth, state_cap, alphabet.
struct scenario
{
    std::string name = "scenario";
    system_spec system;
    adversary_kind adversary = adversary_kind::seeded_random;
    process_id victim;
    std::uint64_t seed = 0;
    std::optional< std::vector< planned_crash > > crash_plan;
    std::size_t step_bound = 200;
    std::vector< value > alphabet = default_alphabet();

    // Throws configuration_error (or parse_error) on any invalid content.
    [[nodiscard]] static scenario parse( std::string_view text );
    [[nodiscard]] static scenario load( const std::filesystem::path& path );
    [[nodiscard]] std::string serialize() const;

    [[nodiscard]] flpe::adversary make_adversary() const;
    [[nodiscard]] execution run() const;
};

} // namespace flpe::harness
