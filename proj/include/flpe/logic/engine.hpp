#pragma once

#include "flpe/logic/formula.hpp"
#include "flpe/logic/logic_id.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flpe::logic
{

struct engine_options
{
    // Extra layers added to the closure set beyond the base construction.
    unsigned closure_level = 0;
    // Closure sets above this size raise resource_error.
    std::size_t closure_cap = 50'000;
};

// A two-valued assignment on a closure set. Not necessarily truth-functional
// for negation in the paraconsistent logics.
struct bivaluation
{
    std::vector< std::pair< formula, bool > > assignment;

    [[nodiscard]] std::optional< bool > value_of( const formula& f ) const;
    // "A=1 ~A=1 B=0" over the given formulas, in display order.
    [[nodiscard]] std::string render( const std::vector< formula >& shown ) const;
};

struct entailment_result
{
    bool entails = false;
    std::optional< bivaluation > counterexample;
    std::size_t closure_size = 0;  // size of the set the verdict was decided on
};

[[nodiscard]] entailment_result entails( logic_id logic, const formula_set& gamma, const formula& goal,
                                         const engine_options& options = {} );

// Some A among the subformulas of gamma with both A and ~A entailed.
[[nodiscard]] bool is_inconsistent( logic_id logic, const formula_set& gamma, const engine_options& options = {} );

// An atom that does not occur in gamma.
[[nodiscard]] formula fresh_atom( const formula_set& gamma );

// gamma entails a fresh atom, which for these logics means it entails everything.
[[nodiscard]] bool trivializes( logic_id logic, const formula_set& gamma, const engine_options& options = {} );

// ~(a & ~a)
[[nodiscard]] formula well_behaved_once( const formula& a );

// a^1 & ... & a^n where a^1 = ~(a & ~a) and a^k = (a^(k-1))^1. Requires n >= 1.
[[nodiscard]] formula well_behaved( const formula& a, unsigned n );

// {A, ~A, well_behaved(A, n)} over atom A.
[[nodiscard]] formula_set gamma_n( unsigned n );

// If b is not entailed by gamma in mbc, then gamma + {b, ~b, ob} trivializes mbc.
[[nodiscard]] bool lfi_circumvention_check( const formula_set& gamma, const formula& b,
                                            const engine_options& options = {} );

// Every formula over `atoms` up to `depth` (atoms have depth 1) that gamma entails.
[[nodiscard]] formula_set closure_fragment( logic_id logic, const formula_set& gamma,
                                            const std::vector< std::string >& atoms, unsigned depth,
                                            const engine_options& options = {} );

// Classical entailment by enumerating truth assignments. Throws
// unsupported_error if a formula uses o.
[[nodiscard]] bool cpl_truth_table( const formula_set& gamma, const formula& goal );

} // namespace flpe::logic
