#include "sat.hpp"

#include <algorithm>

namespace flpe::logic::detail
{

sat_solver::sat_solver( int vars )
    : vars_{ vars }, occurs_( 2 * static_cast< std::size_t >( vars ) + 2 ), assign_( static_cast< std::size_t >( vars ) + 1, 0 )
{
}

void sat_solver::add_clause( std::vector< int > lits )
{
    std::sort( lits.begin(), lits.end() );
    lits.erase( std::unique( lits.begin(), lits.end() ), lits.end() );
    for ( std::size_t i = 0; i + 1 < lits.size(); ++i )
        if ( std::binary_search( lits.begin(), lits.end(), -lits[ i ] ) )
            return;
    if ( lits.empty() )
    {
        trivially_false_ = true;
        return;
    }
    const auto id = static_cast< std::uint32_t >( clauses_.size() );
    for ( int l : lits )
        occurs_[ slot( l ) ].push_back( id );
    clauses_.push_back( std::move( lits ) );
}

// Checks every clause touched by the negation of a literal assigned at or
// after trail position `from`, assigning forced literals as it goes.
bool sat_solver::propagate( std::size_t from )
{
    for ( std::size_t head = from; head < trail_.size(); ++head )
    {
        const int falsified = -trail_[ head ];
        for ( auto id : occurs_[ slot( falsified ) ] )
        {
            int unassigned = 0;
            int last = 0;
            bool satisfied = false;
            for ( int l : clauses_[ id ] )
            {
                const int v = value( l );
                if ( v > 0 )
                {
                    satisfied = true;
                    break;
                }
                if ( v == 0 )
                {
                    ++unassigned;
                    last = l;
                }
            }
            if ( satisfied )
                continue;
            if ( unassigned == 0 )
                return false;
            if ( unassigned == 1 )
                set( last );
        }
    }
    return true;
}

bool sat_solver::solve()
{
    if ( trivially_false_ )
        return false;
    std::fill( assign_.begin(), assign_.end(), 0 );
    trail_.clear();

    for ( const auto& c : clauses_ )
        if ( c.size() == 1 )
        {
            if ( value( c[ 0 ] ) < 0 )
                return false;
            if ( value( c[ 0 ] ) == 0 )
                set( c[ 0 ] );
        }
    if ( !propagate( 0 ) )
        return false;

    struct decision
    {
        std::size_t trail_size;
        int lit;
        bool flipped;
    };
    std::vector< decision > stack;
    int next_var = 1;

    for ( ;; )
    {
        while ( next_var <= vars_ && assign_[ next_var ] != 0 )
            ++next_var;
        if ( next_var > vars_ )
            return true;

        stack.push_back( { trail_.size(), next_var, false } );
        set( next_var );
        bool ok = propagate( stack.back().trail_size );
        while ( !ok )
        {
            while ( !stack.empty() && stack.back().flipped )
                stack.pop_back();
            if ( stack.empty() )
                return false;
            auto& d = stack.back();
            for ( auto i = d.trail_size; i < trail_.size(); ++i )
                assign_[ std::abs( trail_[ i ] ) ] = 0;
            trail_.resize( d.trail_size );
            d.flipped = true;
            d.lit = -d.lit;
            set( d.lit );
            ok = propagate( d.trail_size );
        }
        next_var = 1;
    }
}

} // namespace flpe::logic::detail
