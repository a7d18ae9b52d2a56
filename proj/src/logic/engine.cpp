#include "flpe/logic/engine.hpp"

#include "flpe/core/errors.hpp"
#include "sat.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace flpe::logic
{

namespace
{

// oX becomes ~(X & ~X) in the da Costa logics.
formula expand_consistency( const formula& f, std::unordered_map< formula, formula, formula_hash >& memo )
{
    if ( auto it = memo.find( f ); it != memo.end() )
        return it->second;
    formula out = f;
    switch ( f.kind() )
    {
    case connective::atom: break;
    case connective::negation: out = formula::neg( expand_consistency( f.left(), memo ) ); break;
    case connective::consistency: out = well_behaved_once( expand_consistency( f.left(), memo ) ); break;
    case connective::conjunction:
        out = formula::conj( expand_consistency( f.left(), memo ), expand_consistency( f.right(), memo ) );
        break;
    case connective::disjunction:
        out = formula::disj( expand_consistency( f.left(), memo ), expand_consistency( f.right(), memo ) );
        break;
    case connective::implication:
        out = formula::impl( expand_consistency( f.left(), memo ), expand_consistency( f.right(), memo ) );
        break;
    }
    memo.emplace( f, out );
    return out;
}

class closure_set
{
    std::vector< formula > members_;
    std::unordered_map< formula, int, formula_hash > index_;
    std::size_t cap_;

public:
    explicit closure_set( std::size_t cap ) : cap_{ cap } {}

    int add( const formula& f )
    {
        if ( auto it = index_.find( f ); it != index_.end() )
            return it->second;
        if ( !f.is_atom() )
            add( f.left() );
        if ( f.is_binary() )
            add( f.right() );
        if ( members_.size() >= cap_ )
            throw resource_error{ "closure set exceeds cap of " + std::to_string( cap_ ) + " formulas" };
        members_.push_back( f );
        const int var = static_cast< int >( members_.size() );
        index_.emplace( f, var );
        return var;
    }

    [[nodiscard]] int var( const formula& f ) const { return index_.at( f ); }
    [[nodiscard]] bool contains( const formula& f ) const { return index_.contains( f ); }
    [[nodiscard]] const std::vector< formula >& members() const { return members_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
};

struct encoded
{
    closure_set closure;
    std::vector< std::vector< int > > clauses;
};

void structural_clauses( const closure_set& c, std::vector< std::vector< int > >& out )
{
    for ( const auto& f : c.members() )
    {
        if ( !f.is_binary() )
            continue;
        const int v = c.var( f );
        const int a = c.var( f.left() );
        const int b = c.var( f.right() );
        switch ( f.kind() )
        {
        case connective::conjunction:
            out.push_back( { -v, a } );
            out.push_back( { -v, b } );
            out.push_back( { v, -a, -b } );
            break;
        case connective::disjunction:
            out.push_back( { -v, a, b } );
            out.push_back( { v, -a } );
            out.push_back( { v, -b } );
            break;
        default:
            out.push_back( { -v, -a, b } );
            out.push_back( { v, a } );
            out.push_back( { v, -b } );
            break;
        }
    }
}

encoded encode( logic_id logic, const std::vector< formula >& inputs, const engine_options& options )
{
    encoded e{ closure_set{ options.closure_cap }, {} };
    auto& c = e.closure;
    for ( const auto& f : inputs )
        c.add( f );

    if ( logic.family == logic_family::cpl )
    {
        structural_clauses( c, e.clauses );
        for ( const auto& f : c.members() )
        {
            if ( f.kind() == connective::negation )
            {
                e.clauses.push_back( { -c.var( f ), -c.var( f.left() ) } );
                e.clauses.push_back( { c.var( f ), c.var( f.left() ) } );
            }
            else if ( f.kind() == connective::consistency )
                e.clauses.push_back( { c.var( f ) } );
        }
        return e;
    }

    if ( logic.family == logic_family::mbc )
    {
        const auto base = c.members();
        for ( const auto& f : base )
            if ( f.kind() == connective::consistency )
                c.add( formula::neg( f.left() ) );
        for ( unsigned s = 0; s < options.closure_level; ++s )
        {
            const auto layer = c.members();
            for ( const auto& f : layer )
                c.add( formula::neg( f ) );
        }
        structural_clauses( c, e.clauses );
        for ( const auto& f : c.members() )
        {
            if ( f.kind() == connective::negation )
                e.clauses.push_back( { c.var( f.left() ), c.var( f ) } );
            else if ( f.kind() == connective::consistency )
                e.clauses.push_back( { -c.var( f ), -c.var( f.left() ), -c.var( formula::neg( f.left() ) ) } );
        }
        return e;
    }

    // da Costa C_n: annotate the base set, then optionally every member for
    // each extra closure level.
    const unsigned n = logic.level;
    std::vector< formula > annotated = c.members();
    std::unordered_set< formula, formula_hash > annotated_set;
    auto annotate = [ & ]( const std::vector< formula >& batch ) {
        for ( const auto& f : batch )
        {
            if ( !annotated_set.insert( f ).second )
                continue;
            c.add( formula::neg( f ) );
            c.add( well_behaved( f, n ) );
        }
    };
    annotate( annotated );
    for ( unsigned s = 0; s < options.closure_level; ++s )
    {
        const auto layer = c.members();
        annotate( layer );
    }

    structural_clauses( c, e.clauses );
    for ( const auto& f : c.members() )
        if ( f.kind() == connective::negation )
        {
            e.clauses.push_back( { c.var( f.left() ), c.var( f ) } );
            if ( f.left().kind() == connective::negation )
                e.clauses.push_back( { -c.var( f ), c.var( f.left().left() ) } );
        }
    for ( const auto& f : annotated_set )
    {
        const int ann = c.var( well_behaved( f, n ) );
        e.clauses.push_back( { -ann, -c.var( f ), -c.var( formula::neg( f ) ) } );
        if ( f.is_binary() && annotated_set.contains( f.left() ) && annotated_set.contains( f.right() ) )
            e.clauses.push_back(
                { -c.var( well_behaved( f.left(), n ) ), -c.var( well_behaved( f.right(), n ) ), ann } );
    }
    return e;
}

std::vector< formula > prepare( logic_id logic, const formula_set& gamma, const formula& goal, formula& goal_out,
                                std::vector< formula >& gamma_out )
{
    std::unordered_map< formula, formula, formula_hash > memo;
    auto convert = [ & ]( const formula& f ) {
        return logic.family == logic_family::cn ? expand_consistency( f, memo ) : f;
    };
    std::vector< formula > inputs;
    for ( const auto& g : gamma )
    {
        gamma_out.push_back( convert( g ) );
        inputs.push_back( gamma_out.back() );
    }
    goal_out = convert( goal );
    inputs.push_back( goal_out );
    return inputs;
}

bool evaluate( const formula& f, const std::unordered_map< std::string, bool >& row )
{
    switch ( f.kind() )
    {
    case connective::atom: return row.at( f.name() );
    case connective::negation: return !evaluate( f.left(), row );
    case connective::conjunction: return evaluate( f.left(), row ) && evaluate( f.right(), row );
    case connective::disjunction: return evaluate( f.left(), row ) || evaluate( f.right(), row );
    case connective::implication: return !evaluate( f.left(), row ) || evaluate( f.right(), row );
    case connective::consistency: break;
    }
    throw unsupported_error{ "truth tables do not cover the o operator" };
}

} // namespace

std::optional< bool > bivaluation::value_of( const formula& f ) const
{
    for ( const auto& [ g, v ] : assignment )
        if ( g == f )
            return v;
    return std::nullopt;
}

std::string bivaluation::render( const std::vector< formula >& shown ) const
{
    std::vector< formula > order = shown;
    std::sort( order.begin(), order.end(), display_less );
    order.erase( std::unique( order.begin(), order.end() ), order.end() );
    std::ostringstream out;
    bool first = true;
    for ( const auto& f : order )
    {
        const auto v = value_of( f );
        if ( !v )
            continue;
        out << ( first ? "" : " " ) << f.to_string() << '=' << ( *v ? 1 : 0 );
        first = false;
    }
    return out.str();
}

entailment_result entails( logic_id logic, const formula_set& gamma, const formula& goal,
                           const engine_options& options )
{
    formula target;
    std::vector< formula > premises;
    const auto inputs = prepare( logic, gamma, goal, target, premises );
    auto e = encode( logic, inputs, options );

    detail::sat_solver solver{ static_cast< int >( e.closure.size() ) };
    for ( auto& cl : e.clauses )
        solver.add_clause( std::move( cl ) );
    for ( const auto& g : premises )
        solver.add_clause( { e.closure.var( g ) } );
    solver.add_clause( { -e.closure.var( target ) } );

    entailment_result result;
    result.closure_size = e.closure.size();
    if ( !solver.solve() )
    {
        result.entails = true;
        return result;
    }
    bivaluation b;
    for ( const auto& f : e.closure.members() )
        b.assignment.emplace_back( f, solver.model( e.closure.var( f ) ) );
    result.counterexample = std::move( b );
    return result;
}

bool is_inconsistent( logic_id logic, const formula_set& gamma, const engine_options& options )
{
    std::unordered_set< formula, formula_hash > candidates;
    for ( const auto& g : gamma )
        for ( const auto& s : subformulas( g ) )
            candidates.insert( s );
    std::vector< formula > ordered{ candidates.begin(), candidates.end() };
    std::sort( ordered.begin(), ordered.end() );
    for ( const auto& a : ordered )
        if ( entails( logic, gamma, a, options ).entails &&
             entails( logic, gamma, formula::neg( a ), options ).entails )
            return true;
    return false;
}

formula fresh_atom( const formula_set& gamma )
{
    const auto used = atoms_of( gamma );
    std::string name = "Fresh";
    for ( int i = 1; used.contains( name ); ++i )
        name = "Fresh" + std::to_string( i );
    return formula::atom( name );
}

bool trivializes( logic_id logic, const formula_set& gamma, const engine_options& options )
{
    return entails( logic, gamma, fresh_atom( gamma ), options ).entails;
}

formula well_behaved_once( const formula& a ) { return formula::neg( formula::conj( a, formula::neg( a ) ) ); }

formula well_behaved( const formula& a, unsigned n )
{
    if ( n == 0 )
        throw configuration_error{ "well-behavedness needs n >= 1" };
    formula term = well_behaved_once( a );
    formula all = term;
    for ( unsigned k = 2; k <= n; ++k )
    {
        term = well_behaved_once( term );
        all = formula::conj( all, term );
    }
    return all;
}

formula_set gamma_n( unsigned n )
{
    const auto a = formula::atom( "A" );
    return { a, formula::neg( a ), well_behaved( a, n ) };
}

bool lfi_circumvention_check( const formula_set& gamma, const formula& b, const engine_options& options )
{
    if ( entails( logic_id::mbc(), gamma, b, options ).entails )
        return true;
    auto extended = gamma;
    extended.insert( b );
    extended.insert( formula::neg( b ) );
    extended.insert( formula::circ( b ) );
    return trivializes( logic_id::mbc(), extended, options );
}

formula_set closure_fragment( logic_id logic, const formula_set& gamma, const std::vector< std::string >& atoms,
                              unsigned depth, const engine_options& options )
{
    formula_set out;
    for ( const auto& f : enumerate_formulas( atoms, depth ) )
        if ( entails( logic, gamma, f, options ).entails )
            out.insert( f );
    return out;
}

bool cpl_truth_table( const formula_set& gamma, const formula& goal )
{
    formula_set all = gamma;
    all.insert( goal );
    for ( const auto& f : all )
        if ( contains_consistency( f ) )
            throw unsupported_error{ "truth tables do not cover the o operator" };
    const auto atoms = atoms_of( all );
    if ( atoms.size() > 24 )
        throw resource_error{ "too many atoms for a truth table" };
    const std::vector< std::string > names{ atoms.begin(), atoms.end() };
    std::unordered_map< std::string, bool > row;
    for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << names.size() ); ++bits )
    {
        for ( std::size_t i = 0; i < names.size(); ++i )
            row[ names[ i ] ] = ( bits >> i ) & 1U;
        const bool premises = std::all_of( gamma.begin(), gamma.end(),
                                           [ & ]( const formula& g ) { return evaluate( g, row ); } );
        if ( premises && !evaluate( goal, row ) )
            return false;
    }
    return true;
}

} // namespace flpe::logic
