#include "support.hpp"

#include "flpe/core/errors.hpp"
#include "flpe/harness/commands.hpp"
#include "flpe/harness/scenario.hpp"
#include "flpe/harness/trace.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace flpe::harness
{
namespace
{

std::string slurp( const std::filesystem::path& p )
{
    std::ifstream in{ p, std::ios::binary };
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct cli_result
{
    int code;
    std::string out;
    std::string err;
};

cli_result cli( std::vector< std::string > args )
{
    std::ostringstream out, err;
    const int code = run_cli( args, out, err );
    return { code, out.str(), err.str() };
}

std::string data( const char* name ) { return ( test::data_dir() / name ).string(); }

TEST( Scenario, ParsesTheDocumentedKeys )
{
    const auto s = scenario::parse( "flpe-scenario 1\n"
                                    "# comment\n"
                                    "name = demo\n"
                                    "processes = 3\n"
                                    "values = 0, 1, 1\n"
                                    "protocol = p1-padded:2\n"
                                    "timeout_quorum = 2\n"
                                    "crash_budget = 1\n"
                                    "adversary = delay:2\n"
                                    "seed = 42\n"
                                    "crash_plan = 3:0\n"
                                    "step_bound = 50\n"
                                    "depth = 12\n" );
    EXPECT_EQ( s.name, "demo" );
    EXPECT_EQ( s.system.values.size(), 3U );
    EXPECT_EQ( s.system.recipe.padding, 2U );
    EXPECT_EQ( s.system.recipe.quorum, 2U );
    EXPECT_EQ( s.adversary, adversary_kind::targeted_delay );
    EXPECT_EQ( s.victim, process_id{ 2 } );
    EXPECT_EQ( s.seed, 42U );
    ASSERT_TRUE( s.crash_plan );
    EXPECT_EQ( ( *s.crash_plan )[ 0 ], ( planned_crash{ 3, { 0 } } ) );
    EXPECT_EQ( s.step_bound, 50U );
    EXPECT_EQ( s.system.bounds.depth_bound, 12U );
}

TEST( Scenario, SerializeRoundTrip )
{
    for ( const char* name : { "p0_nofault.scn", "p1_split.scn", "p3_mbc.scn", "p1_oracle.scn" } )
    {
        const auto s = scenario::load( data( name ) );
        const auto text = s.serialize();
        EXPECT_EQ( scenario::parse( text ).serialize(), text ) << name;
    }
}

TEST( Scenario, RejectsInvalidInput )
{
    const std::string head = "flpe-scenario 1\n";
    for ( const std::string body : {
              "processes = 3\nvalues = 0,1\nprotocol = p0\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p9\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p0\ncrash_budget = 3\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p1\ntimeout_quorum = 4\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p1-oracle\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p1\nknown_faulty = 5\noracle_depth = 1\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p0\nadversary = delay:9\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p0\nstep_bound = 0\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p0\nbogus = 1\n",
              "processes = 3\nvalues = 0,1,1\nprotocol = p0\nseed\n",
          } )
        EXPECT_THROW( (void)scenario::parse( head + body ), std::runtime_error ) << body;
    EXPECT_THROW( (void)scenario::parse( "processes = 3\n" ), std::runtime_error );
}

TEST( Trace, WriteReadReplay )
{
    const auto s = scenario::load( data( "p1_split.scn" ) );
    const auto ex = s.run();
    std::stringstream buf;
    write_trace( buf, s, ex );
    const auto t = read_trace( buf );
    EXPECT_EQ( t.events, ex.events() );
    EXPECT_EQ( t.source.serialize(), s.serialize() );
    const auto again = replay_trace( t );
    EXPECT_EQ( again.final_config(), ex.final_config() );
}

TEST( Trace, TamperedDigestIsDetected )
{
    const auto s = scenario::load( data( "p1_split.scn" ) );
    std::stringstream buf;
    write_trace( buf, s, s.run() );
    auto t = read_trace( buf );
    ASSERT_FALSE( t.digests.empty() );
    t.digests.back()[ 0 ] = t.digests.back()[ 0 ] == '0' ? '1' : '0';
    EXPECT_THROW( (void)replay_trace( t ), configuration_error );
}

TEST( Trace, MalformedInputRejected )
{
    std::stringstream bad{ "{\"format\":\"other\"}\n" };
    EXPECT_THROW( (void)read_trace( bad ), configuration_error );
    std::stringstream junk{ "not json\n" };
    EXPECT_THROW( (void)read_trace( junk ), configuration_error );
}

TEST( Trace, SameSeedSameBytes )
{
    const auto dir = test::scratch_dir( "determinism" );
    for ( const char* name : { "p1_split.scn", "p3_mbc.scn", "p1_oracle.scn" } )
    {
        const auto s = scenario::load( data( name ) );
        write_trace_file( dir / "a.jsonl", s, s.run() );
        write_trace_file( dir / "b.jsonl", s, s.run() );
        EXPECT_EQ( slurp( dir / "a.jsonl" ), slurp( dir / "b.jsonl" ) ) << name;
    }
}

TEST( Cli, RunWritesTrace )
{
    const auto dir = test::scratch_dir( "cli-run" );
    const auto r = cli( { "run", data( "p1_split.scn" ), "--out", dir.string() } );
    EXPECT_EQ( r.code, 0 ) << r.err;
    EXPECT_NE( r.out.find( "profile (T," ), std::string::npos );
    EXPECT_NE( r.out.find( "g_inf=" ), std::string::npos );
    EXPECT_TRUE( std::filesystem::exists( dir / "p1_split.trace.jsonl" ) );
}

TEST( Cli, ExitCodes )
{
    const auto dir = test::scratch_dir( "cli-codes" ).string();
    EXPECT_EQ( cli( {} ).code, 2 );
    EXPECT_EQ( cli( { "frobnicate" } ).code, 2 );
    EXPECT_EQ( cli( { "run", "/nonexistent.scn" } ).code, 2 );
    EXPECT_EQ( cli( { "logic", "mbc", "A & " } ).code, 2 );
    EXPECT_EQ( cli( { "logic", "k3", "A |- A" } ).code, 2 );
    EXPECT_EQ( cli( { "sweep", data( "p1_split.scn" ), "--range", "0-2", "--out", dir } ).code, 2 );
    EXPECT_EQ( cli( { "emergence", data( "p0_nofault.scn" ), "--transform", "pad:1", "--range", "0..0", "--out",
                      dir } )
                   .code,
               3 );
    EXPECT_EQ( cli( { "explore", data( "p1_split.scn" ), "--cap", "10", "--out", dir } ).code, 4 );
    EXPECT_EQ( cli( { "--help" } ).code, 0 );
}

TEST( Cli, EnvironmentCapYieldsToFlag )
{
    const auto dir = test::scratch_dir( "cli-env" ).string();
    ::setenv( "FLPE_CAP", "10", 1 );
    const auto limited = cli( { "explore", data( "p1_split.scn" ), "--out", dir } );
    const auto flagged = cli( { "explore", data( "p1_split.scn" ), "--out", dir, "--cap", "100000" } );
    ::unsetenv( "FLPE_CAP" );
    EXPECT_EQ( limited.code, 4 );
    EXPECT_EQ( flagged.code, 0 );
}

TEST( Cli, LogicVerdicts )
{
    auto r = cli( { "logic", "mbc", "A, ~A |- B" } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "COUNTEREXAMPLE A=1 B=0 ~A=1\n" );
    EXPECT_EQ( cli( { "logic", "cpl", "A, ~A |- B" } ).out, "ENTAILS\n" );
    EXPECT_EQ( cli( { "logic", "c1", "A, ~A, ~(A & ~A) |- B" } ).out, "ENTAILS\n" );
}

TEST( Cli, SweepCsvMatchesGolden )
{
    const auto dir = test::scratch_dir( "cli-sweep" );
    const auto r = cli( { "sweep", data( "p1_split.scn" ), "--feature", "faults", "--range", "0..2", "--out",
                          dir.string() } );
    ASSERT_EQ( r.code, 0 ) << r.err;
    auto golden = slurp( test::data_dir() / "p1_split_sweep.csv" );
    for ( std::size_t pos; ( pos = golden.find( "{out}" ) ) != std::string::npos; )
        golden.replace( pos, 5, dir.string() );
    EXPECT_EQ( r.out, golden );
    for ( int v = 0; v <= 2; ++v )
        EXPECT_TRUE( std::filesystem::exists( dir / ( "p1_split-faults-" + std::to_string( v ) + ".jsonl" ) ) );
}

TEST( Cli, EmptyRangeGivesHeaderOnly )
{
    const auto dir = test::scratch_dir( "cli-empty" ).string();
    const auto r = cli( { "sweep", data( "p1_split.scn" ), "--range", "2..1", "--out", dir } );
    EXPECT_EQ( r.code, 0 );
    EXPECT_EQ( r.out, "feature,value,profiles,worst,terminal_states,truncated_states,visited,partial,depth_bound,"
                      "witness\n" );
}

TEST( Cli, BridgeOnSplitWitness )
{
    const auto dir = test::scratch_dir( "cli-bridge" );
    ASSERT_EQ( cli( { "sweep", data( "p1_split.scn" ), "--range", "1..1", "--out", dir.string() } ).code, 0 );
    const auto r = cli( { "bridge", ( dir / "p1_split-faults-1.jsonl" ).string(), "mbc" } );
    EXPECT_EQ( r.code, 0 ) << r.err;
    EXPECT_EQ( r.out, "CPL: TRIVIAL | mbc: inconsistent, non-trivial\n" );
}

TEST( Cli, EmergenceReportsRecurrence )
{
    const auto dir = test::scratch_dir( "cli-emergence" ).string();
    const auto r = cli( { "emergence", data( "p1_split.scn" ), "--transform", "pad:3", "--out", dir } );
    EXPECT_EQ( r.code, 0 ) << r.err;
    EXPECT_NE( r.out.find( "RECURRED, step index shifted +9" ), std::string::npos ) << r.out;
}

TEST( Cli, BridgeOnAgreementAndUndecidedTraces )
{
    const auto dir = test::scratch_dir( "cli-bridge-agree" );
    ASSERT_EQ( cli( { "run", data( "p0_nofault.scn" ), "--out", dir.string() } ).code, 0 );
    EXPECT_EQ( cli( { "bridge", ( dir / "p0_nofault.trace.jsonl" ).string(), "mbc" } ).out,
               "CPL: consistent | mbc: consistent\n" );

    auto s = scenario::load( data( "p0_nofault.scn" ) );
    s.step_bound = 2;
    write_trace_file( dir / "undecided.jsonl", s, s.run() );
    EXPECT_EQ( cli( { "bridge", ( dir / "undecided.jsonl" ).string(), "c1" } ).out,
               "CPL: consistent | c1: consistent\n" );
    EXPECT_EQ( cli( { "bridge", ( dir / "missing.jsonl" ).string() } ).code, 2 );
}

TEST( Cli, OracleLevelSweepFindsTransitionOnLevelOne )
{
    const auto dir = test::scratch_dir( "cli-oracle-sweep" ).string();
    const auto r = cli( { "sweep", data( "p1_oracle.scn" ), "--feature", "level:1", "--range", "0..1", "--format",
                          "text", "--out", dir } );
    EXPECT_EQ( r.code, 0 ) << r.err;
    EXPECT_NE( r.out.find( "transition at level:1=1: (T,T,T) -> (T,F,T)" ), std::string::npos ) << r.out;
}

TEST( Cli, RunRejectsMismatchedValueCount )
{
    const auto dir = test::scratch_dir( "cli-mismatch" );
    std::ofstream{ dir / "bad.scn" } << "flpe-scenario 1\nprocesses = 3\nvalues = 0,1\nprotocol = p0\n";
    const auto r = cli( { "run", ( dir / "bad.scn" ).string() } );
    EXPECT_EQ( r.code, 2 );
    EXPECT_FALSE( r.err.empty() );
}

TEST( Verdict, Wording )
{
    EXPECT_EQ( outcome_verdict( "CPL", true, true ), "CPL: TRIVIAL" );
    EXPECT_EQ( outcome_verdict( "mbc", false, true ), "mbc: inconsistent, non-trivial" );
    EXPECT_EQ( outcome_verdict( "c1", false, false ), "c1: consistent" );
}

} // namespace
} // namespace flpe::harness
