#include "flpe/harness/trace.hpp"

#include "flpe/core/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace flpe::harness
{

namespace
{

using json = nlohmann::ordered_json;

std::string adversary_name( const scenario& s )
{
    switch ( s.adversary )
    {
    case adversary_kind::seeded_random: return "random";
    case adversary_kind::exhaustive: return "exhaustive";
    case adversary_kind::targeted_delay: return "delay:" + std::to_string( s.victim.index );
    }
    return "?";
}

json payloads( const std::vector< value >& vs )
{
    json out = json::array();
    for ( const auto& v : vs )
        out.push_back( v.payload );
    return out;
}

std::vector< value > read_values( const json& j )
{
    std::vector< value > out;
    for ( const auto& v : j )
        out.push_back( { v.get< std::int32_t >() } );
    return out;
}

message_kind kind_from( const std::string& name )
{
    for ( auto k : { message_kind::value_announce, message_kind::view_announce, message_kind::oracle_query,
                     message_kind::oracle_reply, message_kind::dummy } )
        if ( to_string( k ) == name )
            return k;
    throw configuration_error{ "unknown message kind '" + name + "' in trace" };
}

} // namespace

void write_trace( std::ostream& out, const scenario& source, const execution& ex, std::string_view adversary_label )
{
    const auto& sys = source.system;
    json header;
    header[ "format" ] = "flpe-trace";
    header[ "version" ] = 1;
    header[ "scenario" ] = source.name;
    header[ "protocol" ] = sys.recipe.key();
    header[ "timeout_quorum" ] = sys.recipe.quorum;
    header[ "values" ] = payloads( sys.values );
    json kf = json::array();
    for ( const auto& p : sys.known_faulty )
        kf.push_back( p.index );
    header[ "known_faulty" ] = kf;
    header[ "oracle_depth" ] = sys.oracle_depth;
    header[ "crash_budget" ] = sys.budget.total;
    header[ "level_budget" ] = sys.budget.level_caps;
    header[ "adversary" ] = adversary_label.empty() ? adversary_name( source ) : std::string{ adversary_label };
    header[ "seed" ] = source.seed;
    header[ "step_bound" ] = source.step_bound;
    header[ "depth" ] = sys.bounds.depth_bound;
    header[ "state_cap" ] = sys.bounds.state_cap;
    header[ "alphabet" ] = payloads( source.alphabet );
    header[ "steps" ] = ex.length();
    header[ "truncated" ] = ex.truncated;
    out << header.dump() << '\n';

    for ( std::size_t i = 0; i < ex.steps.size(); ++i )
    {
        const auto& step = ex.steps[ i ];
        json r;
        r[ "step" ] = i + 1;
        r[ "event" ] = std::string{ event_kind_name( step.ev ) };
        if ( const auto* d = std::get_if< deliver_event >( &step.ev ) )
        {
            r[ "kind" ] = std::string{ to_string( d->msg.kind ) };
            r[ "src" ] = d->msg.src.index;
            r[ "dst" ] = d->msg.dst.index;
            r[ "seq" ] = d->msg.seq;
            if ( const auto* v = std::get_if< value >( &d->msg.body ) )
                r[ "value" ] = v->payload;
            else if ( const auto* cv = std::get_if< crash_verdict >( &d->msg.body ) )
            {
                r[ "subject" ] = cv->subject.index;
                r[ "crashed" ] = cv->crashed;
            }
            else if ( const auto* ks = std::get_if< known_set >( &d->msg.body ) )
                r[ "mask" ] = ks->mask;
        }
        else
        {
            process_id p;
            std::visit(
                [ & ]( const auto& e ) {
                    if constexpr ( !std::is_same_v< std::decay_t< decltype( e ) >, deliver_event > )
                        p = e.process;
                },
                step.ev );
            r[ "process" ] = p.index;
        }
        r[ "digest" ] = config_digest( step.config ).hex();
        json decided = json::array();
        const auto& before = ex.config_at( i );
        for ( const auto& s : step.config.states )
            if ( s.decision && !before.state( s.id ).decision )
                decided.push_back( json{ { "process", s.id.index }, { "value", s.decision->payload } } );
        r[ "decided" ] = decided;
        out << r.dump() << '\n';
    }
}

void write_trace_file( const std::filesystem::path& path, const scenario& source, const execution& ex,
                       std::string_view adversary_label )
{
    if ( path.has_parent_path() )
        std::filesystem::create_directories( path.parent_path() );
    std::ofstream out{ path, std::ios::binary };
    if ( !out )
        throw configuration_error{ "cannot write trace " + path.string() };
    write_trace( out, source, ex, adversary_label );
}

trace read_trace( std::istream& in )
{
    trace t;
    std::string line;
    if ( !std::getline( in, line ) )
        throw configuration_error{ "empty trace" };
    try
    {
        const auto h = json::parse( line );
        if ( h.value( "format", "" ) != "flpe-trace" || h.value( "version", 0 ) != 1 )
            throw configuration_error{ "not a version 1 flpe trace" };
        auto& s = t.source;
        s.name = h.at( "scenario" ).get< std::string >();
        s.system.recipe = protocols::protocol_recipe::parse( h.at( "protocol" ).get< std::string >() );
        s.system.recipe.quorum = h.at( "timeout_quorum" ).get< std::size_t >();
        s.system.values = read_values( h.at( "values" ) );
        for ( const auto& p : h.at( "known_faulty" ) )
            s.system.known_faulty.insert( { p.get< std::uint32_t >() } );
        s.system.oracle_depth = h.at( "oracle_depth" ).get< unsigned >();
        s.system.budget.total = h.at( "crash_budget" ).get< std::size_t >();
        s.system.budget.level_caps = h.at( "level_budget" ).get< std::vector< std::size_t > >();
        t.adversary = h.at( "adversary" ).get< std::string >();
        s.seed = h.at( "seed" ).get< std::uint64_t >();
        s.step_bound = h.at( "step_bound" ).get< std::size_t >();
        s.system.bounds.depth_bound = h.at( "depth" ).get< std::size_t >();
        s.system.bounds.state_cap = h.at( "state_cap" ).get< std::size_t >();
        s.alphabet = read_values( h.at( "alphabet" ) );
        t.truncated = h.at( "truncated" ).get< bool >();

        while ( std::getline( in, line ) )
        {
            if ( line.empty() )
                continue;
            const auto r = json::parse( line );
            const auto kind = r.at( "event" ).get< std::string >();
            if ( kind == "deliver" )
            {
                message m;
                m.kind = kind_from( r.at( "kind" ).get< std::string >() );
                m.src = { r.at( "src" ).get< std::uint32_t >() };
                m.dst = { r.at( "dst" ).get< std::uint32_t >() };
                m.seq = r.at( "seq" ).get< std::uint32_t >();
                if ( r.contains( "value" ) )
                    m.body = value{ r.at( "value" ).get< std::int32_t >() };
                else if ( r.contains( "subject" ) )
                    m.body = crash_verdict{ { r.at( "subject" ).get< std::uint32_t >() }, r.at( "crashed" ).get< bool >() };
                else if ( r.contains( "mask" ) )
                    m.body = known_set{ r.at( "mask" ).get< std::uint64_t >() };
                t.events.emplace_back( deliver_event{ m } );
            }
            else
            {
                const process_id p{ r.at( "process" ).get< std::uint32_t >() };
                if ( kind == "start" )
                    t.events.emplace_back( start_event{ p } );
                else if ( kind == "timeout" )
                    t.events.emplace_back( timeout_event{ p } );
                else if ( kind == "crash" )
                    t.events.emplace_back( crash_event{ p } );
                else
                    throw configuration_error{ "unknown event '" + kind + "' in trace" };
            }
            t.digests.push_back( r.at( "digest" ).get< std::string >() );
        }
    }
    catch ( const json::exception& e )
    {
        throw configuration_error{ std::string{ "malformed trace: " } + e.what() };
    }
    return t;
}

trace read_trace_file( const std::filesystem::path& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw configuration_error{ "cannot read trace " + path.string() };
    return read_trace( in );
}

execution replay_trace( const trace& t )
{
    const auto& sys = t.source.system;
    const auto topology = sys.topology();
    const auto consensus = sys.protocol();
    const auto budget = sys.effective_budget();
    execution ex{ topology, sys.initial(), {}, t.truncated };
    for ( std::size_t i = 0; i < t.events.size(); ++i )
    {
        const event& e = t.events[ i ];
        const auto& current = ex.final_config();
        if ( const auto* d = std::get_if< deliver_event >( &e ) )
            if ( std::find( current.in_flight.begin(), current.in_flight.end(), d->msg ) == current.in_flight.end() )
                throw configuration_error{ "trace step " + std::to_string( i + 1 ) + " delivers an unknown message" };
        const auto enabled = enabled_events( current, topology, *consensus, budget );
        if ( std::find( enabled.begin(), enabled.end(), e ) == enabled.end() )
            throw configuration_error{ "trace step " + std::to_string( i + 1 ) + " is not enabled: " + describe( e ) };
        auto next = apply_event( current, e, topology, *consensus );
        if ( config_digest( next ).hex() != t.digests[ i ] )
            throw configuration_error{ "trace step " + std::to_string( i + 1 ) + " digest mismatch" };
        ex.steps.push_back( { e, std::move( next ) } );
    }
    return ex;
}

} // namespace flpe::harness
