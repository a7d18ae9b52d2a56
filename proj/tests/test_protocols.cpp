#include "support.hpp"

#include "flpe/core/errors.hpp"

#include <gtest/gtest.h>

namespace flpe
{
namespace
{

using protocols::protocol_recipe;

std::vector< value > ordinary_decisions( const configuration& c, const system_topology& t )
{
    std::vector< value > out;
    for ( const auto p : t.ordinary_processes() )
        out.push_back( c.state( p ).decision.value_or( value{ -1 } ) );
    return out;
}

TEST( Recipe, KeysRoundTrip )
{
    for ( const char* key : { "p0", "p1", "p1-padded:3", "p0-oracle", "p1-oracle", "p3:mbc", "p3:c2",
                              "p1-oracle-padded:2", "p3:mbc-oracle" } )
        EXPECT_EQ( protocol_recipe::parse( key ).key(), key );
}

TEST( Recipe, RejectsUnknownKeys )
{
    for ( const char* key : { "", "p2", "p1-padded:", "p1-padded:x", "p3:cpl", "p3:zz", "p0-extra" } )
        EXPECT_THROW( (void)protocol_recipe::parse( key ), configuration_error ) << key;
}

TEST( Recipe, QuorumMustFitTheSystem )
{
    auto r = protocol_recipe::parse( "p1" );
    r.quorum = 4;
    EXPECT_THROW( (void)r.build( system_topology::complete( 3 ) ), configuration_error );
}

TEST( Floodmin, DecidesMinimumWithoutFaults )
{
    const auto s = test::three_process( "p0", 0 );
    const auto r = test::explore_spec( s );
    ASSERT_EQ( r.profiles(), ( std::set< property_profile >{ { true, true, true } } ) );
    const auto& w = r.witnesses.begin()->second;
    for ( const auto p : w.topology.ordinary_processes() )
        EXPECT_EQ( w.final_config().state( p ).decision, value{ 0 } );
}

TEST( Floodmin, BlocksButStaysConsistentUnderOneCrash )
{
    const auto r = test::explore_spec( test::three_process( "p0", 1 ) );
    for ( const auto& p : r.profiles() )
        EXPECT_TRUE( p.consistency );
    EXPECT_TRUE( r.profiles().contains( property_profile{ false, true, true } ) );
}

TEST( ForcedFloodmin, SplitsUnderOneCrash )
{
    const auto r = test::explore_spec( test::three_process( "p1", 1 ) );
    EXPECT_TRUE( r.profiles().contains( property_profile{ true, false, true } ) );
    for ( const auto& p : r.profiles() )
        EXPECT_TRUE( p.termination );
}

TEST( ForcedFloodmin, CanonicalSplitSchedule )
{
    // p0 crashes after its value reached only p1; p1 completes, p2 times out.
    const auto s = test::three_process( "p1", 1 );
    const auto topo = s.topology();
    const auto& proto = *s.protocol();
    auto c = s.initial();
    for ( std::uint32_t i = 0; i < 3; ++i )
        c = apply_event( c, start_event{ { i } }, topo, proto );
    const message m{ { 0 }, { 1 }, message_kind::value_announce, value{ 0 }, 0 };
    c = apply_event( c, deliver_event{ m }, topo, proto );
    c = apply_event( c, crash_event{ { 0 } }, topo, proto );
    const message from_p2{ { 2 }, { 1 }, message_kind::value_announce, value{ 1 }, 1 };
    c = apply_event( c, deliver_event{ from_p2 }, topo, proto );
    c = apply_event( c, timeout_event{ { 2 } }, topo, proto );
    EXPECT_EQ( c.state( { 1 } ).decision, value{ 0 } );
    EXPECT_EQ( c.state( { 2 } ).decision, value{ 1 } );
    EXPECT_EQ( profile_of( c, topo ), ( property_profile{ true, false, true } ) );
}

TEST( ForcedFloodmin, TimeoutNeedsACrashedPeerAndTheQuorum )
{
    auto s = test::three_process( "p1", 1 );
    s.recipe.quorum = 2;
    const auto topo = s.topology();
    const auto proto = s.protocol();
    auto c = apply_event( s.initial(), start_event{ { 1 } }, topo, *proto );
    c = apply_event( c, crash_event{ { 0 } }, topo, *proto );
    for ( const auto& e : enabled_events( c, topo, *proto, s.budget ) )
        EXPECT_FALSE( std::holds_alternative< timeout_event >( e ) ) << describe( e );
    c = apply_event( c, start_event{ { 2 } }, topo, *proto );
    const message m{ { 2 }, { 1 }, message_kind::value_announce, value{ 1 }, 1 };
    c = apply_event( c, deliver_event{ m }, topo, *proto );
    const auto events = enabled_events( c, topo, *proto, s.budget );
    EXPECT_NE( std::find( events.begin(), events.end(), event{ timeout_event{ { 1 } } } ), events.end() );
}

TEST( ForcedFloodmin, DecisionsAreAlwaysInitialValues )
{
    const auto s = test::three_process( "p1", 2 );
    const auto topo = s.topology();
    const auto proto = s.protocol();
    for ( std::uint64_t seed = 0; seed < 10'000; ++seed )
    {
        const auto ex = run( topo, s.initial(), *proto, adversary::seeded_random( seed, s.budget ), 200 );
        ASSERT_TRUE( measure_nontriviality( ex ) ) << "seed " << seed;
    }
}

TEST( Padding, ZeroIsIdentity )
{
    auto base = protocols::forced_floodmin();
    auto same = protocols::pad_with_dummies( base, 0 );
    EXPECT_EQ( base.get(), same.get() );
}

TEST( Padding, DummiesAreConsumedBeforeDeciding )
{
    const auto s = test::three_process( "p0-padded:2", 0 );
    const auto topo = s.topology();
    auto c = apply_event( s.initial(), start_event{ { 0 } }, topo, *s.protocol() );
    std::size_t dummies = 0;
    for ( const auto& m : c.in_flight )
        if ( m.kind == message_kind::dummy )
        {
            ++dummies;
            EXPECT_EQ( m.dst, process_id{ 0 } );
        }
    EXPECT_EQ( dummies, 2U );
    EXPECT_EQ( c.state( { 0 } ).locals.dummies_pending, 2U );
}

TEST( Padding, CorrespondingSchedulesKeepDecisions )
{
    const auto base = test::three_process( "p1", 1 );
    const auto topo = base.topology();
    const auto base_proto = base.protocol();
    for ( std::uint32_t k : { 0U, 1U, 3U } )
    {
        auto padded = base;
        padded.recipe.padding = k;
        const auto padded_proto = padded.protocol();
        for ( std::uint64_t seed = 0; seed < 200; ++seed )
        {
            const auto ex = run( topo, base.initial(), *base_proto, adversary::seeded_random( seed, base.budget ), 200 );
            const auto mapped = replay( topo, base.initial(), *padded_proto, base.budget,
                                        padded_schedule( ex.events(), k, topo ) );
            ASSERT_EQ( ordinary_decisions( mapped.final_config(), topo ),
                       ordinary_decisions( ex.final_config(), topo ) )
                << "k " << k << " seed " << seed;
            ASSERT_EQ( mapped.length(), ex.length() + k * [ & ] {
                std::size_t starts = 0;
                for ( const auto& e : ex.events() )
                    starts += std::holds_alternative< start_event >( e ) ? 1 : 0;
                return starts;
            }() );
        }
    }
}

TEST( Padding, StillSplitsUnderOneCrash )
{
    const auto r = test::explore_spec( test::three_process( "p1-padded:1", 1, 30 ) );
    EXPECT_FALSE( r.partial );
    EXPECT_TRUE( r.profiles().contains( property_profile{ true, false, true } ) );
}

system_spec guarded( unsigned depth, std::vector< std::size_t > caps )
{
    auto s = test::three_process( "p1-oracle", 0, 80 );
    s.known_faulty = { { 0 } };
    s.oracle_depth = depth;
    s.budget.level_caps = caps;
    s.budget.total = 0;
    for ( auto c : caps )
        s.budget.total += c;
    return s;
}

TEST( Oracle, HierarchyShape )
{
    const auto topo = guarded( 2, { 1, 0, 0 } ).topology();
    EXPECT_EQ( topo.size(), 5U );
    EXPECT_EQ( topo.max_level(), 2U );
    EXPECT_EQ( topo.oracle_target( { 3 } ), process_id{ 0 } );
    EXPECT_EQ( topo.oracle_target( { 4 } ), process_id{ 3 } );
}

TEST( Oracle, RepliesTellTheTruthAtAnswerTime )
{
    const auto s = guarded( 1, { 1, 1 } );
    const auto topo = s.topology();
    const auto proto = s.protocol();
    for ( std::uint64_t seed = 0; seed < 2'000; ++seed )
    {
        const auto ex = run( topo, s.initial(), *proto, adversary::seeded_random( seed, s.effective_budget() ), 400 );
        for ( std::size_t t = 1; t <= ex.length(); ++t )
        {
            const auto& before = ex.config_at( t - 1 );
            const auto* d = std::get_if< deliver_event >( &ex.steps[ t - 1 ].ev );
            if ( !d || d->msg.kind != message_kind::oracle_query )
                continue;
            for ( const auto& m : ex.config_at( t ).in_flight )
                if ( m.kind == message_kind::oracle_reply && m.src == d->msg.dst &&
                     m.seq == before.state( d->msg.dst ).next_seq )
                {
                    const auto& v = std::get< crash_verdict >( m.body );
                    ASSERT_EQ( v.crashed, before.state( v.subject ).crashed ) << "seed " << seed;
                }
        }
    }
}

TEST( Oracle, CorrectOracleRemovesTheSplit )
{
    const auto r = test::explore_spec( guarded( 1, { 1, 0 } ) );
    ASSERT_FALSE( r.partial );
    EXPECT_EQ( r.profiles(), ( std::set< property_profile >{ { true, true, true } } ) );
}

TEST( Oracle, CrashedOracleBringsTheSplitBack )
{
    const auto r = test::explore_spec( guarded( 1, { 1, 1 } ) );
    ASSERT_FALSE( r.partial );
    EXPECT_TRUE( r.profiles().contains( property_profile{ true, false, true } ) );
}

TEST( Oracle, OnlyKnownFaultyProcessCanCrash )
{
    const auto s = guarded( 1, { 1, 0 } );
    const auto b = s.effective_budget();
    EXPECT_TRUE( b.immune.contains( process_id{ 1 } ) );
    EXPECT_TRUE( b.immune.contains( process_id{ 2 } ) );
    EXPECT_FALSE( b.immune.contains( process_id{ 0 } ) );
}

TEST( Paraconsistent, RejectsClassicalLogic )
{
    EXPECT_THROW( (void)protocols::paraconsistent_floodmin( logic::logic_id::cpl() ), configuration_error );
    EXPECT_EQ( protocols::paraconsistent_floodmin( logic::logic_id::cn( 1 ) )->name(), "p3:c1" );
}

TEST( Paraconsistent, AlwaysTerminates )
{
    const auto r = test::explore_spec( test::three_process( "p3:mbc", 1 ) );
    for ( const auto& p : r.profiles() )
        EXPECT_TRUE( p.termination );
}

} // namespace
} // namespace flpe
