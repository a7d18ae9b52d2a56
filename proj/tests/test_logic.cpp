#include "flpe/core/errors.hpp"
#include "flpe/logic/engine.hpp"

#include <gtest/gtest.h>

#include <random>

namespace flpe::logic
{
namespace
{

formula f( std::string_view text ) { return parse_formula( text ); }

formula_set set_of( std::initializer_list< std::string_view > texts )
{
    formula_set out;
    for ( auto t : texts )
        out.insert( f( t ) );
    return out;
}

const std::vector< logic_id > all_logics{ logic_id::cpl(), logic_id::mbc(), logic_id::cn( 1 ), logic_id::cn( 2 ),
                                          logic_id::cn( 3 ) };

TEST( LogicId, Parsing )
{
    EXPECT_EQ( logic_id::parse( "CPL" ), logic_id::cpl() );
    EXPECT_EQ( logic_id::parse( "mbc" ), logic_id::mbc() );
    EXPECT_EQ( logic_id::parse( "C3" ).level, 3U );
    EXPECT_EQ( logic_id::cn( 2 ).name(), "c2" );
    EXPECT_FALSE( logic_id::cpl().paraconsistent() );
    EXPECT_THROW( (void)logic_id::parse( "c0" ), std::exception );
    EXPECT_THROW( (void)logic_id::parse( "c7" ), std::exception );
    EXPECT_THROW( (void)logic_id::parse( "k3" ), parse_error );
}

TEST( Formula, HashConsing )
{
    EXPECT_EQ( f( "(A & ~B)" ), formula::conj( formula::atom( "A" ), formula::neg( formula::atom( "B" ) ) ) );
    EXPECT_NE( f( "A & B" ), f( "B & A" ) );
    EXPECT_EQ( f( "A -> B -> C" ), f( "A -> (B -> C)" ) );
    EXPECT_EQ( f( "~A | B & C" ), f( "(~A) | (B & C)" ) );
    EXPECT_EQ( f( "o(A -> B)" ).to_string(), "o(A -> B)" );
    EXPECT_EQ( f( "A" ).depth(), 1U );
    EXPECT_EQ( f( "~(A & B)" ).depth(), 3U );
    EXPECT_EQ( f( "~(A & B)" ).size(), 4U );
}

TEST( Formula, PrintParseRoundTrip )
{
    for ( const auto& g : enumerate_formulas( { "A", "B" }, 3, true ) )
        ASSERT_EQ( parse_formula( g.to_string() ), g ) << g.to_string();
}

TEST( Formula, ParseErrorsCarryPosition )
{
    try
    {
        (void)parse_formula( "A & (B | " );
        FAIL();
    }
    catch ( const parse_error& e )
    {
        EXPECT_EQ( e.position(), 9U );
    }
    EXPECT_THROW( (void)parse_formula( "A B" ), parse_error );
    EXPECT_THROW( (void)parse_formula( "~" ), parse_error );
    EXPECT_THROW( (void)parse_sequent( "A, B" ), parse_error );
}

TEST( Formula, SequentsAndLists )
{
    const auto [ gamma, goal ] = parse_sequent( "A, ~A |- B" );
    EXPECT_EQ( gamma, set_of( { "A", "~A" } ) );
    EXPECT_EQ( goal, f( "B" ) );
    EXPECT_TRUE( parse_sequent( " |- A | ~A" ).first.empty() );
    EXPECT_EQ( parse_formula_list( "A, B & C" ).size(), 2U );
}

TEST( Formula, EnumerationCounts )
{
    EXPECT_EQ( enumerate_formulas( { "A" }, 1 ).size(), 1U );
    EXPECT_EQ( enumerate_formulas( { "A" }, 2 ).size(), 5U );
    EXPECT_EQ( enumerate_formulas( { "A", "B", "C" }, 3 ).size(), 3303U );
}

TEST( Engine, Staircase )
{
    const formula_set contradiction = set_of( { "A", "~A" } );
    EXPECT_TRUE( trivializes( logic_id::cpl(), contradiction ) );
    EXPECT_FALSE( trivializes( logic_id::mbc(), contradiction ) );
    EXPECT_TRUE( trivializes( logic_id::mbc(), set_of( { "A", "~A", "oA" } ) ) );
    for ( unsigned n = 1; n <= 3; ++n )
    {
        EXPECT_FALSE( trivializes( logic_id::cn( n ), contradiction ) ) << n;
        EXPECT_TRUE( trivializes( logic_id::cn( n ), gamma_n( n ) ) ) << n;
        EXPECT_FALSE( trivializes( logic_id::cn( n + 1 ), gamma_n( n ) ) ) << n;
    }
}

TEST( Engine, ParaconsistentLawsStillHold )
{
    for ( const auto l : all_logics )
    {
        EXPECT_TRUE( entails( l, {}, f( "A | ~A" ) ).entails ) << l.name();
        EXPECT_TRUE( entails( l, set_of( { "A", "A -> B" } ), f( "B" ) ).entails ) << l.name();
        EXPECT_TRUE( entails( l, set_of( { "A & B" } ), f( "B & A" ) ).entails ) << l.name();
        EXPECT_FALSE( entails( l, set_of( { "A | B" } ), f( "A" ) ).entails ) << l.name();
    }
    EXPECT_TRUE( entails( logic_id::cpl(), set_of( { "~~A" } ), f( "A" ) ).entails );
    EXPECT_TRUE( entails( logic_id::cn( 1 ), set_of( { "~~A" } ), f( "A" ) ).entails );
    EXPECT_FALSE( entails( logic_id::mbc(), set_of( { "~~A" } ), f( "A" ) ).entails );
    EXPECT_FALSE( entails( logic_id::mbc(), set_of( { "A" } ), f( "~~A" ) ).entails );
}

TEST( Engine, CounterexampleFalsifiesTheGoal )
{
    const auto r = entails( logic_id::mbc(), set_of( { "A", "~A" } ), f( "B" ) );
    ASSERT_FALSE( r.entails );
    ASSERT_TRUE( r.counterexample );
    EXPECT_EQ( r.counterexample->value_of( f( "A" ) ), true );
    EXPECT_EQ( r.counterexample->value_of( f( "~A" ) ), true );
    EXPECT_EQ( r.counterexample->value_of( f( "B" ) ), false );
    EXPECT_EQ( r.counterexample->render( { f( "~A" ), f( "A" ), f( "B" ) } ), "A=1 B=0 ~A=1" );
}

TEST( Engine, Reflexivity )
{
    for ( const auto l : all_logics )
        for ( const auto& g : enumerate_formulas( { "A", "B" }, 3, l.family != logic_family::cpl ) )
        {
            const formula_set gamma{ g };
            ASSERT_TRUE( entails( l, gamma, g ).entails ) << l.name() << ' ' << g.to_string();
        }
}

TEST( Engine, MonotonicityOnRandomInstances )
{
    const auto pool = enumerate_formulas( { "A", "B" }, 3, true );
    std::mt19937_64 rng{ 42 };
    for ( const auto l : all_logics )
        for ( int i = 0; i < 300; ++i )
        {
            formula_set gamma{ pool[ rng() % pool.size() ], pool[ rng() % pool.size() ] };
            const auto goal = pool[ rng() % pool.size() ];
            if ( !entails( l, gamma, goal ).entails )
                continue;
            gamma.insert( pool[ rng() % pool.size() ] );
            ASSERT_TRUE( entails( l, gamma, goal ).entails ) << l.name() << ' ' << goal.to_string();
        }
}

TEST( Engine, ParaconsistentEntailmentIsClassical )
{
    const auto pool = enumerate_formulas( { "A", "B" }, 3 );
    std::mt19937_64 rng{ 7 };
    for ( int i = 0; i < 500; ++i )
    {
        const formula_set gamma{ pool[ rng() % pool.size() ] };
        const auto goal = pool[ rng() % pool.size() ];
        const bool classical = cpl_truth_table( gamma, goal );
        for ( const auto l : { logic_id::mbc(), logic_id::cn( 1 ), logic_id::cn( 2 ) } )
        {
            if ( entails( l, gamma, goal ).entails )
            {
                ASSERT_TRUE( classical ) << l.name() << ' ' << goal.to_string();
            }
        }
    }
}

TEST( Engine, AgreesWithTruthTablesOnRandomInstances )
{
    const auto pool = enumerate_formulas( { "A", "B", "C", "D" }, 3 );
    std::mt19937_64 rng{ 99 };
    for ( int i = 0; i < 2'000; ++i )
    {
        formula_set gamma;
        for ( std::size_t j = rng() % 3; j > 0; --j )
            gamma.insert( pool[ rng() % pool.size() ] );
        const auto goal = pool[ rng() % pool.size() ];
        ASSERT_EQ( entails( logic_id::cpl(), gamma, goal ).entails, cpl_truth_table( gamma, goal ) )
            << goal.to_string();
    }
}

TEST( Engine, StableUnderClosureGrowth )
{
    const std::vector< std::pair< logic_id, formula_set > > cases{
        { logic_id::mbc(), set_of( { "A", "~A" } ) },
        { logic_id::cn( 1 ), set_of( { "A", "~A" } ) },
        { logic_id::cn( 2 ), gamma_n( 1 ) },
        { logic_id::cn( 2 ), gamma_n( 2 ) },
    };
    for ( const auto& [ l, gamma ] : cases )
    {
        const bool base = trivializes( l, gamma );
        EXPECT_EQ( trivializes( l, gamma, { 1 } ), base ) << l.name();
        EXPECT_EQ( trivializes( l, gamma, { 2 } ), base ) << l.name();
    }
}

TEST( Engine, InconsistencyIsNotTriviality )
{
    const auto gamma = set_of( { "A", "~A" } );
    EXPECT_TRUE( is_inconsistent( logic_id::mbc(), gamma ) );
    EXPECT_FALSE( is_inconsistent( logic_id::mbc(), set_of( { "A", "B" } ) ) );
    EXPECT_EQ( fresh_atom( set_of( { "Fresh", "A" } ) ), f( "Fresh1" ) );
}

TEST( Engine, LfiCircumvention )
{
    EXPECT_TRUE( lfi_circumvention_check( set_of( { "A" } ), f( "B" ) ) );
    EXPECT_TRUE( lfi_circumvention_check( set_of( { "A", "~A" } ), f( "B" ) ) );
}

TEST( Engine, ClosureFragmentContainsExcludedMiddle )
{
    const auto frag = closure_fragment( logic_id::mbc(), {}, { "A" }, 3 );
    EXPECT_TRUE( frag.contains( f( "A | ~A" ) ) );
    EXPECT_FALSE( frag.contains( f( "A" ) ) );
}

TEST( Engine, TruthTableRejectsConsistencyOperator )
{
    EXPECT_THROW( (void)cpl_truth_table( {}, f( "oA" ) ), unsupported_error );
}

TEST( Engine, ClosureCapRaisesResourceError )
{
    engine_options tight;
    tight.closure_cap = 3;
    EXPECT_THROW( (void)entails( logic_id::mbc(), set_of( { "A & B", "~(B | C)" } ), f( "C" ), tight ),
                  resource_error );
}

} // namespace
} // namespace flpe::logic
