#pragma once

#include <cstdint>
#include <vector>

namespace flpe::logic::detail
{

// Small DPLL solver with unit propagation over occurrence lists. Literals
// are +v / -v for variables 1..n.
class sat_solver
{
    int vars_;
    std::vector< std::vector< int > > clauses_;
    std::vector< std::vector< std::uint32_t > > occurs_;  // by literal slot
    std::vector< std::int8_t > assign_;
    std::vector< int > trail_;
    bool trivially_false_ = false;

    [[nodiscard]] std::size_t slot( int lit ) const { return lit > 0 ? 2 * lit : 2 * -lit + 1; }
    [[nodiscard]] int value( int lit ) const
    {
        const int v = assign_[ lit > 0 ? lit : -lit ];
        return lit > 0 ? v : -v;
    }
    void set( int lit ) { assign_[ lit > 0 ? lit : -lit ] = lit > 0 ? 1 : -1; trail_.push_back( lit ); }
    bool propagate( std::size_t from );

public:
    explicit sat_solver( int vars );

    void add_clause( std::vector< int > lits );
    [[nodiscard]] bool solve();
    [[nodiscard]] bool model( int var ) const { return assign_[ var ] > 0; }
};

} // namespace flpe::logic::detail
