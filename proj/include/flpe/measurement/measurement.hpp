#pragma once

#include "flpe/core/transition.hpp"
#include "flpe/logic/formula.hpp"
#include "flpe/measurement/profile.hpp"
#include "flpe/protocols/protocols.hpp"
#include "flpe/scheduler/scheduler.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flpe
{

struct measured
{
    bool value = true;
    bool advisory = false;  // measured on a truncated execution
};

[[nodiscard]] measured measure_termination( const execution& ex );
[[nodiscard]] bool measure_consistency( const execution& ex );
[[nodiscard]] bool measure_nontriviality( const execution& ex );
[[nodiscard]] property_profile measure( const execution& ex );

// Crashed processes at hierarchy level `level` in the final configuration.
[[nodiscard]] std::size_t count_faulty( const execution& ex, unsigned level );
[[nodiscard]] std::size_t count_faulty_total( const execution& ex );

// With N the highest level present, exactly one level-N process crashed and
// nothing above N (trivially) did.
[[nodiscard]] bool maximal_level_condition( const execution& ex );

// First configuration index whose decided ordinary processes disagree.
[[nodiscard]] std::optional< std::size_t > first_inconsistent_index( const execution& ex );

// A system to explore: ordinary values, an oracle chain of `oracle_depth`
// above every known-faulty process, a protocol recipe, a crash budget and
// exploration bounds. Ordinary processes that are not known-faulty are
// immune to crashes whenever some process is known-faulty.
struct system_spec
{
    std::vector< value > values;
    std::set< process_id > known_faulty;
    unsigned oracle_depth = 0;
    protocols::protocol_recipe recipe;
    crash_budget budget;
    explore_options bounds;

    [[nodiscard]] system_topology topology() const;
    [[nodiscard]] configuration initial() const;
    [[nodiscard]] protocol_ptr protocol() const;
    [[nodiscard]] crash_budget effective_budget() const;
};

enum class feature_kind
{
    termination,
    consistency,
    non_triviality,
    fault_count,
    fault_count_at_level,
};

struct feature_id
{
    feature_kind kind = feature_kind::fault_count;
    unsigned level = 0;

    // "faults" or "level:N". Throws configuration_error.
    [[nodiscard]] static feature_id parse( std::string_view text );
    [[nodiscard]] std::string to_string() const;

    bool operator==( const feature_id& ) const = default;
};

// Budget of `spec` with the swept feature set to `v`. `faults` sets the
// total; `level:N` sets the cap of level N and the total to the sum of caps.
[[nodiscard]] crash_budget budget_for( const crash_budget& base, const feature_id& feature, std::size_t v );

struct sweep_row
{
    std::size_t value = 0;
    exploration_result exploration;

    [[nodiscard]] std::set< property_profile > profiles() const { return exploration.profiles(); }
    [[nodiscard]] property_profile worst() const { return worst_profile( profiles() ); }
    // Witness of the most violating profile, if any terminal state exists.
    [[nodiscard]] const execution* witness() const;
};

// Only swept features (fault counts) are accepted; throws configuration_error otherwise.
[[nodiscard]] std::vector< sweep_row > sweep( const system_spec& spec, const feature_id& feature, std::size_t from,
                                              std::size_t to );

struct phase_transition_report
{
    feature_id feature;
    std::size_t transition_at = 0;
    property_profile before;
    property_profile after;
    execution witness;
};

// First swept value whose worst profile differs from the previous one.
[[nodiscard]] std::optional< phase_transition_report > find_transition( const feature_id& feature,
                                                                        const std::vector< sweep_row >& rows );

struct transformation
{
    enum class kind_t
    {
        add_oracle,
        pad,
    };
    kind_t kind = kind_t::add_oracle;
    std::uint32_t k = 0;

    // "oracle" or "pad:k". Throws configuration_error.
    [[nodiscard]] static transformation parse( std::string_view text );
    [[nodiscard]] std::string to_string() const;
};

struct emergence_verdict
{
    bool applicable = false;
    std::optional< phase_transition_report > baseline;
    std::optional< phase_transition_report > transformed;
    std::string postponement;
    bool recurred = false;
    std::size_t recurred_at = 0;  // level for oracles, fault count for padding
    unsigned level = 0;           // hierarchy level the recurring transition lives on
    long step_shift = 0;          // padding only
    bool decisions_preserved = true;
    system_spec transformed_spec;

    // "RECURRED at level 1", "RECURRED, step index shifted +9", "NOT RECURRED ...", "NOT APPLICABLE"
    [[nodiscard]] std::string summary() const;
};

// Adds oracles above the processes crashed at the transition, or pads the
// protocol, then sweeps again and compares.
[[nodiscard]] emergence_verdict check_emergence( const system_spec& spec, const feature_id& feature,
                                                 std::size_t from, std::size_t to, const transformation& t );

// Schedule of the k-padded protocol corresponding to `events` of the base:
// k dummy deliveries right after every start, ordinary senders' sequence
// numbers shifted by k.
[[nodiscard]] std::vector< event > padded_schedule( const std::vector< event >& events, std::uint32_t k,
                                                    const system_topology& topology );

// Atom for "some process decided v".
[[nodiscard]] logic::formula decision_atom( value v );

// {D<v> : v decided} plus D<a> -> ~D<b> for distinct a, b among the
// alphabet and the decided values.
[[nodiscard]] logic::formula_set encode_outcome( const configuration& config, const system_topology& topology,
                                                 const std::vector< value >& alphabet );
[[nodiscard]] logic::formula_set encode_outcome( const execution& ex, const std::vector< value >& alphabet );

[[nodiscard]] std::vector< value > default_alphabet();

} // namespace flpe
