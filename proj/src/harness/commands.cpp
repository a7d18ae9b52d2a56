#include "flpe/harness/commands.hpp"

#include "flpe/core/errors.hpp"
#include "flpe/harness/scenario.hpp"
#include "flpe/harness/trace.hpp"
#include "flpe/logic/engine.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace flpe::harness
{

namespace
{

namespace fs = std::filesystem;

struct common_options
{
    std::string scenario_path;
    std::string out_dir = ".";
    std::optional< std::uint64_t > seed;
    std::optional< std::size_t > depth;
    std::optional< std::size_t > cap;
    std::string format = "text";
};

void add_common( CLI::App* sub, common_options& o, bool with_seed )
{
    sub->add_option( "--scenario,scenario", o.scenario_path, "Scenario file" )->required();
    sub->add_option( "--out", o.out_dir, "Directory for traces" );
    if ( with_seed )
        sub->add_option( "--seed", o.seed, "Override the scenario seed" );
    sub->add_option( "--depth", o.depth, "Exploration depth bound" );
    sub->add_option( "--cap", o.cap, "Visited-state cap" );
    sub->add_option( "--format", o.format, "Report format" )->check( CLI::IsMember( { "text", "csv" } ) );
}

scenario load_with_overrides( const common_options& o )
{
    auto s = scenario::load( o.scenario_path );
    if ( o.seed )
        s.seed = *o.seed;
    if ( o.depth )
        s.system.bounds.depth_bound = *o.depth;
    if ( const char* env = std::getenv( "FLPE_CAP" ); env && *env )
    {
        std::size_t cap = 0;
        const std::string_view text{ env };
        auto [ ptr, ec ] = std::from_chars( text.data(), text.data() + text.size(), cap );
        if ( ec != std::errc{} || ptr != text.data() + text.size() )
            throw configuration_error{ "FLPE_CAP must be a number" };
        s.system.bounds.state_cap = cap;
    }
    if ( o.cap )
        s.system.bounds.state_cap = *o.cap;
    return s;
}

std::pair< std::size_t, std::size_t > parse_range( const std::string& text )
{
    const auto dots = text.find( ".." );
    if ( dots == std::string::npos )
        throw configuration_error{ "range must look like a..b" };
    auto num = [ & ]( std::string_view part ) {
        std::size_t v = 0;
        auto [ ptr, ec ] = std::from_chars( part.data(), part.data() + part.size(), v );
        if ( ec != std::errc{} || ptr != part.data() + part.size() || part.empty() )
            throw configuration_error{ "bad range '" + text + "'" };
        return v;
    };
    const std::string_view view{ text };
    return { num( view.substr( 0, dots ) ), num( view.substr( dots + 2 ) ) };
}

std::string file_tag( std::string text )
{
    std::replace( text.begin(), text.end(), ':', '-' );
    return text;
}

std::string profile_tag( const property_profile& p )
{
    std::string out;
    for ( char c : p.to_string() )
        if ( c == 'T' || c == 'F' )
            out += c;
    return out;
}

std::string yes_no( bool b ) { return b ? "T" : "F"; }

int cmd_run( const common_options& o, std::ostream& out )
{
    const auto s = load_with_overrides( o );
    const auto ex = s.run();
    const auto path = fs::path{ o.out_dir } / ( s.name + ".trace.jsonl" );
    write_trace_file( path, s, ex );

    const auto profile = measure( ex );
    const auto adm = check_admissible( ex );
    out << "scenario " << s.name << " protocol " << s.system.recipe.key() << " seed " << s.seed << '\n';
    out << "steps " << ex.length() << ( ex.truncated ? " (truncated at step bound)" : " (complete)" ) << '\n';
    out << "profile " << profile.to_string() << '\n';
    out << "g_t=" << yes_no( profile.termination ) << " g_c=" << yes_no( profile.consistency )
        << " g_n=" << yes_no( profile.non_triviality ) << " g_inf=" << count_faulty_total( ex );
    for ( unsigned level = 0; level <= ex.topology.max_level(); ++level )
        out << " g_" << level << '=' << count_faulty( ex, level );
    out << '\n';
    out << "admissible " << ( adm.admissible ? "yes" : "no" ) << " (faults " << adm.fault_count << ", undelivered "
        << adm.undelivered_to_correct.size() << ( adm.advisory ? ", advisory" : "" ) << ")\n";
    out << "maximal-level condition " << ( maximal_level_condition( ex ) ? "holds" : "fails" ) << '\n';
    out << "trace " << path.string() << '\n';
    return exit_ok;
}

int cmd_explore( const common_options& o, std::ostream& out )
{
    const auto s = load_with_overrides( o );
    const auto topology = s.system.topology();
    const auto result = explore( topology, s.system.initial(), *s.system.protocol(), s.system.effective_budget(),
                                 s.system.bounds );
    std::vector< std::pair< property_profile, fs::path > > written;
    for ( const auto& [ p, w ] : result.witnesses )
    {
        const auto path = fs::path{ o.out_dir } / ( s.name + "-witness-" + profile_tag( p ) + ".jsonl" );
        write_trace_file( path, s, w, "exhaustive" );
        written.emplace_back( p, path );
    }
    if ( o.format == "csv" )
    {
        out << "profile,witness_steps,witness\n";
        for ( const auto& [ p, path ] : written )
            out << '"' << p.to_string() << "\"," << result.witnesses.at( p ).length() << ',' << path.string() << '\n';
    }
    else
    {
        out << "explored " << s.name << ": " << result.visited << " configurations, " << result.terminal_states
            << " terminal, " << result.truncated_states << " truncated at depth " << result.depth_bound
            << ( result.partial ? ", PARTIAL (state cap reached)" : "" ) << '\n';
        for ( const auto& [ p, path ] : written )
            out << p.to_string() << " witness " << result.witnesses.at( p ).length() << " steps " << path.string()
                << '\n';
        out << "worst " << worst_profile( result.profiles() ).to_string() << '\n';
    }
    return result.partial ? exit_resource : exit_ok;
}

int cmd_sweep( const common_options& o, const std::string& feature_text, const std::string& range, std::ostream& out )
{
    const auto s = load_with_overrides( o );
    const auto feature = feature_id::parse( feature_text );
    const auto [ from, to ] = parse_range( range );
    const auto rows = from <= to ? sweep( s.system, feature, from, to ) : std::vector< sweep_row >{};

    if ( o.format == "csv" )
        out << "feature,value,profiles,worst,terminal_states,truncated_states,visited,partial,depth_bound,witness\n";
    for ( const auto& row : rows )
    {
        std::string witness_path;
        if ( const auto* w = row.witness() )
        {
            auto traced = s;
            traced.system.budget = budget_for( s.system.budget, feature, row.value );
            const auto path =
                fs::path{ o.out_dir } / ( s.name + "-" + file_tag( feature.to_string() ) + "-" +
                                          std::to_string( row.value ) + ".jsonl" );
            write_trace_file( path, traced, *w, "exhaustive" );
            witness_path = path.string();
        }
        const auto& e = row.exploration;
        if ( o.format == "csv" )
            out << feature.to_string() << ',' << row.value << ",\"" << to_string( row.profiles() ) << "\",\""
                << row.worst().to_string() << "\"," << e.terminal_states << ',' << e.truncated_states << ','
                << e.visited << ',' << ( e.partial ? "true" : "false" ) << ',' << e.depth_bound << ','
                << witness_path << '\n';
        else
            out << feature.to_string() << '=' << row.value << " worst " << row.worst().to_string() << " profiles "
                << to_string( row.profiles() ) << " visited " << e.visited << ( e.partial ? " PARTIAL" : "" )
                << " witness " << witness_path << '\n';
    }
    if ( o.format != "csv" )
    {
        if ( const auto t = find_transition( feature, rows ) )
            out << "transition at " << feature.to_string() << '=' << t->transition_at << ": "
                << t->before.to_string() << " -> " << t->after.to_string() << '\n';
        else
            out << "no transition\n";
    }
    return exit_ok;
}

int cmd_emergence( const common_options& o, const std::string& transform_text, std::string feature_text,
                   const std::string& range, std::ostream& out )
{
    const auto s = load_with_overrides( o );
    const auto t = transformation::parse( transform_text );
    if ( feature_text.empty() )
        feature_text = s.system.oracle_depth == 0 ? "faults" : "level:" + std::to_string( s.system.oracle_depth );
    const auto feature = feature_id::parse( feature_text );
    const auto [ from, to ] = parse_range( range );
    const auto v = check_emergence( s.system, feature, from, to, t );
    if ( !v.applicable )
    {
        out << v.summary() << '\n';
        return exit_precondition;
    }
    const auto& b = *v.baseline;
    out << "baseline " << b.before.to_string() << " -> " << b.after.to_string() << " at " << b.feature.to_string()
        << '=' << b.transition_at << '\n';
    out << "transformed (" << v.postponement << ") ";
    if ( v.transformed )
        out << v.transformed->before.to_string() << " -> " << v.transformed->after.to_string() << " at "
            << v.transformed->feature.to_string() << '=' << v.transformed->transition_at << '\n';
    else
        out << "no transition\n";
    out << v.summary() << '\n';
    return exit_ok;
}

int cmd_logic( const std::string& logic_text, const std::string& query, std::ostream& out )
{
    const auto logic = logic::logic_id::parse( logic_text );
    const auto [ gamma, goal ] = logic::parse_sequent( query );
    const auto r = logic::entails( logic, gamma, goal );
    if ( r.entails )
    {
        out << "ENTAILS\n";
        return exit_ok;
    }
    std::vector< logic::formula > shown;
    auto all = gamma;
    all.insert( goal );
    for ( const auto& f : all )
        for ( const auto& sub : logic::subformulas( f ) )
            shown.push_back( sub );
    out << "COUNTEREXAMPLE " << r.counterexample->render( shown ) << '\n';
    return exit_ok;
}

int cmd_bridge( const std::string& trace_path, const std::string& logic_text, std::ostream& out )
{
    const auto logic = logic::logic_id::parse( logic_text );
    const auto t = read_trace_file( trace_path );
    const auto ex = replay_trace( t );
    const auto gamma = encode_outcome( ex, t.source.alphabet );
    const auto cpl = logic::logic_id::cpl();
    out << outcome_verdict( "CPL", logic::trivializes( cpl, gamma ), logic::is_inconsistent( cpl, gamma ) ) << " | "
        << outcome_verdict( logic.name(), logic::trivializes( logic, gamma ), logic::is_inconsistent( logic, gamma ) )
        << '\n';
    return exit_ok;
}

} // namespace

std::string outcome_verdict( const std::string& logic_name, bool trivial, bool inconsistent )
{
    if ( trivial )
        return logic_name + ": TRIVIAL";
    return logic_name + ": " + ( inconsistent ? "inconsistent, non-trivial" : "consistent" );
}

int run_cli( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Consensus phase-transition simulator and paraconsistent logic engine", "flpe" };
    app.require_subcommand( 1 );

    common_options run_opts, explore_opts, sweep_opts, emergence_opts;
    auto* run = app.add_subcommand( "run", "Run one seeded execution and write its trace" );
    add_common( run, run_opts, true );

    auto* exp = app.add_subcommand( "explore", "Explore every schedule up to the depth bound" );
    add_common( exp, explore_opts, false );

    std::string feature = "faults";
    std::string range = "0..1";
    auto* swp = app.add_subcommand( "sweep", "Sweep a fault-count feature and report profiles per value" );
    add_common( swp, sweep_opts, false );
    sweep_opts.format = "csv";
    swp->add_option( "--feature", feature, "faults or level:N" );
    swp->add_option( "--range", range, "Swept values a..b" );

    std::string transform;
    std::string emergence_feature;
    std::string emergence_range = "0..1";
    auto* emg = app.add_subcommand( "emergence", "Check whether a phase transition survives a postponement" );
    add_common( emg, emergence_opts, false );
    emg->add_option( "--transform", transform, "oracle or pad:k" )->required();
    emg->add_option( "--feature", emergence_feature, "faults or level:N (default follows the hierarchy)" );
    emg->add_option( "--range", emergence_range, "Swept values a..b" );

    std::string logic_name;
    std::string query;
    auto* lgc = app.add_subcommand( "logic", "Decide an entailment: GAMMA |- GOAL" );
    lgc->add_option( "logic", logic_name, "cpl, mbc or c1..c6" )->required();
    lgc->add_option( "query", query, "Premises and goal" )->required();

    std::string trace_path;
    std::string bridge_logic = "mbc";
    auto* brg = app.add_subcommand( "bridge", "Read a trace's outcome as a knowledge base" );
    brg->add_option( "trace", trace_path, "Trace file" )->required();
    brg->add_option( "logic", bridge_logic, "Paraconsistent logic to compare with CPL" );

    try
    {
        std::vector< std::string > reversed{ args.rbegin(), args.rend() };
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& e )
    {
        out << app.help();
        return exit_ok;
    }
    catch ( const CLI::ParseError& e )
    {
        err << "flpe: " << e.what() << '\n';
        return exit_input_error;
    }

    try
    {
        if ( run->parsed() )
            return cmd_run( run_opts, out );
        if ( exp->parsed() )
            return cmd_explore( explore_opts, out );
        if ( swp->parsed() )
            return cmd_sweep( sweep_opts, feature, range, out );
        if ( emg->parsed() )
            return cmd_emergence( emergence_opts, transform, emergence_feature, emergence_range, out );
        if ( lgc->parsed() )
            return cmd_logic( logic_name, query, out );
        return cmd_bridge( trace_path, bridge_logic, out );
    }
    catch ( const resource_error& e )
    {
        err << "flpe: " << e.what() << '\n';
        return exit_resource;
    }
    catch ( const std::runtime_error& e )
    {
        err << "flpe: " << e.what() << '\n';
        return exit_input_error;
    }
}

} // namespace flpe::harness
