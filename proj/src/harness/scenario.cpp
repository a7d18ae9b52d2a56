#include "flpe/harness/scenario.hpp"

#include "flpe/core/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace flpe::harness
{

namespace
{

std::string_view trim( std::string_view s )
{
    while ( !s.empty() && std::isspace( static_cast< unsigned char >( s.front() ) ) )
        s.remove_prefix( 1 );
    while ( !s.empty() && std::isspace( static_cast< unsigned char >( s.back() ) ) )
        s.remove_suffix( 1 );
    return s;
}

template < typename T >
T number( std::string_view text, const std::string& key )
{
    text = trim( text );
    T v{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ ptr, ec ] = std::from_chars( first, last, v );
    if ( ec != std::errc{} || ptr != last || first == last )
        throw configuration_error{ "bad number '" + std::string{ text } + "' for " + key };
    return v;
}

std::vector< std::string_view > split( std::string_view text, char sep )
{
    std::vector< std::string_view > out;
    text = trim( text );
    if ( text.empty() )
        return out;
    for ( ;; )
    {
        const auto pos = text.find( sep );
        out.push_back( trim( text.substr( 0, pos ) ) );
        if ( pos == std::string_view::npos )
            break;
        text.remove_prefix( pos + 1 );
    }
    return out;
}

template < typename T >
std::vector< T > number_list( std::string_view text, const std::string& key )
{
    std::vector< T > out;
    for ( auto item : split( text, ',' ) )
        out.push_back( number< T >( item, key ) );
    return out;
}

std::string join_values( const std::vector< value >& vs )
{
    std::string out;
    for ( const auto& v : vs )
        out += ( out.empty() ? "" : "," ) + std::to_string( v.payload );
    return out;
}

} // namespace

scenario scenario::parse( std::string_view text )
{
    std::istringstream in{ std::string{ text } };
    std::string line;
    if ( !std::getline( in, line ) || trim( line ) != scenario_magic )
        throw configuration_error{ "scenario must start with '" + std::string{ scenario_magic } + "'" };

    std::map< std::string, std::string > entries;
    for ( int lineno = 2; std::getline( in, line ); ++lineno )
    {
        const auto body = trim( line );
        if ( body.empty() || body.front() == '#' )
            continue;
        const auto eq = body.find( '=' );
        if ( eq == std::string_view::npos )
            throw configuration_error{ "line " + std::to_string( lineno ) + ": expected key = value" };
        std::string key{ trim( body.substr( 0, eq ) ) };
        if ( !entries.emplace( key, std::string{ trim( body.substr( eq + 1 ) ) } ).second )
            throw configuration_error{ "duplicate key '" + key + "'" };
    }

    scenario s;
    std::optional< std::size_t > processes;
    std::optional< unsigned > oracle_depth;
    std::size_t quorum = 1;
    for ( const auto& [ key, raw ] : entries )
    {
        if ( key == "name" )
            s.name = raw;
        else if ( key == "processes" )
            processes = number< std::size_t >( raw, key );
        else if ( key == "values" )
        {
            s.system.values.clear();
            for ( auto v : number_list< std::int32_t >( raw, key ) )
                s.system.values.push_back( { v } );
        }
        else if ( key == "protocol" )
            s.system.recipe = protocols::protocol_recipe::parse( raw );
        else if ( key == "timeout_quorum" )
            quorum = number< std::size_t >( raw, key );
        else if ( key == "known_faulty" )
            for ( auto p : number_list< std::uint32_t >( raw, key ) )
                s.system.known_faulty.insert( { p } );
        else if ( key == "oracle_depth" )
            oracle_depth = number< unsigned >( raw, key );
        else if ( key == "adversary" )
        {
            if ( raw == "random" )
                s.adversary = adversary_kind::seeded_random;
            else if ( raw == "exhaustive" )
                s.adversary = adversary_kind::exhaustive;
            else if ( raw.starts_with( "delay:" ) )
            {
                s.adversary = adversary_kind::targeted_delay;
                s.victim = { number< std::uint32_t >( std::string_view{ raw }.substr( 6 ), key ) };
            }
            else
                throw configuration_error{ "unknown adversary '" + raw + "'" };
        }
        else if ( key == "seed" )
            s.seed = number< std::uint64_t >( raw, key );
        else if ( key == "crash_budget" )
            s.system.budget.total = number< std::size_t >( raw, key );
        else if ( key == "level_budget" )
            s.system.budget.level_caps = number_list< std::size_t >( raw, key );
        else if ( key == "crash_plan" )
        {
            std::vector< planned_crash > plan;
            for ( auto item : split( raw, ',' ) )
            {
                const auto colon = item.find( ':' );
                if ( colon == std::string_view::npos )
                    throw configuration_error{ "crash_plan entries are <step>:<pid>" };
                plan.push_back( { number< std::size_t >( item.substr( 0, colon ), key ),
                                  { number< std::uint32_t >( item.substr( colon + 1 ), key ) } } );
            }
            s.crash_plan = std::move( plan );
        }
        else if ( key == "step_bound" )
            s.step_bound = number< std::size_t >( raw, key );
        else if ( key == "depth" )
            s.system.bounds.depth_bound = number< std::size_t >( raw, key );
        else if ( key == "state_cap" )
            s.system.bounds.state_cap = number< std::size_t >( raw, key );
        else if ( key == "alphabet" )
        {
            s.alphabet.clear();
            for ( auto v : number_list< std::int32_t >( raw, key ) )
                s.alphabet.push_back( { v } );
        }
        else
            throw configuration_error{ "unknown scenario key '" + key + "'" };
    }

    if ( !processes )
        throw configuration_error{ "scenario needs 'processes'" };
    if ( *processes == 0 )
        throw configuration_error{ "a system needs at least one process" };
    if ( s.system.values.size() != *processes )
        throw configuration_error{ "expected " + std::to_string( *processes ) + " values, got " +
                                   std::to_string( s.system.values.size() ) };
    if ( !s.system.budget.level_caps.empty() && !entries.contains( "crash_budget" ) )
        for ( auto c : s.system.budget.level_caps )
            s.system.budget.total += c;
    for ( const auto& p : s.system.known_faulty )
        if ( p.index >= *processes )
            throw configuration_error{ "known-faulty process p" + std::to_string( p.index ) + " does not exist" };
    s.system.oracle_depth = oracle_depth.value_or( s.system.known_faulty.empty() ? 0 : 1 );
    if ( s.system.budget.total >= s.system.topology().size() )
        throw configuration_error{ "crash budget must leave at least one process alive" };
    if ( s.system.recipe.oracle_guarded && ( s.system.known_faulty.empty() || s.system.oracle_depth == 0 ) )
        throw configuration_error{ "oracle protocols need known_faulty processes" };
    s.system.recipe.quorum = quorum;
    if ( quorum == 0 || quorum > *processes )
        throw configuration_error{ "timeout_quorum must be within 1..processes" };
    if ( s.adversary == adversary_kind::targeted_delay && s.victim.index >= s.system.topology().size() )
        throw configuration_error{ "delay victim does not exist" };
    if ( s.crash_plan )
    {
        if ( s.crash_plan->size() > s.system.budget.total )
            throw configuration_error{ "crash_plan has more crashes than crash_budget allows" };
        for ( const auto& pc : *s.crash_plan )
            if ( pc.process.index >= s.system.topology().size() )
                throw configuration_error{ "crash_plan names an unknown process" };
    }
    if ( s.step_bound == 0 )
        throw configuration_error{ "step_bound must be at least 1" };
    return s;
}

scenario scenario::load( const std::filesystem::path& path )
{
    std::ifstream in{ path };
    if ( !in )
        throw configuration_error{ "cannot read scenario " + path.string() };
    std::stringstream buf;
    buf << in.rdbuf();
    return parse( buf.str() );
}

std::string scenario::serialize() const
{
    std::ostringstream out;
    out << scenario_magic << '\n';
    out << "name = " << name << '\n';
    out << "processes = " << system.values.size() << '\n';
    out << "values = " << join_values( system.values ) << '\n';
    out << "protocol = " << system.recipe.key() << '\n';
    out << "timeout_quorum = " << system.recipe.quorum << '\n';
    if ( !system.known_faulty.empty() )
    {
        std::string kf;
        for ( const auto& p : system.known_faulty )
            kf += ( kf.empty() ? "" : "," ) + std::to_string( p.index );
        out << "known_faulty = " << kf << '\n';
        out << "oracle_depth = " << system.oracle_depth << '\n';
    }
    switch ( adversary )
    {
    case adversary_kind::seeded_random: out << "adversary = random\n"; break;
    case adversary_kind::exhaustive: out << "adversary = exhaustive\n"; break;
    case adversary_kind::targeted_delay: out << "adversary = delay:" << victim.index << '\n'; break;
    }
    out << "seed = " << seed << '\n';
    out << "crash_budget = " << system.budget.total << '\n';
    if ( !system.budget.level_caps.empty() )
    {
        std::string caps;
        for ( auto c : system.budget.level_caps )
            caps += ( caps.empty() ? "" : "," ) + std::to_string( c );
        out << "level_budget = " << caps << '\n';
    }
    if ( crash_plan )
    {
        std::string plan;
        for ( const auto& pc : *crash_plan )
            plan += ( plan.empty() ? "" : "," ) + std::to_string( pc.step ) + ":" + std::to_string( pc.process.index );
        out << "crash_plan = " << plan << '\n';
    }
    out << "step_bound = " << step_bound << '\n';
    out << "depth = " << system.bounds.depth_bound << '\n';
    out << "state_cap = " << system.bounds.state_cap << '\n';
    out << "alphabet = " << join_values( alphabet ) << '\n';
    return out.str();
}

flpe::adversary scenario::make_adversary() const
{
    flpe::adversary a;
    a.kind = adversary;
    a.seed = seed;
    a.victim = victim;
    a.budget = system.effective_budget();
    a.crash_plan = crash_plan;
    return a;
}

execution scenario::run() const
{
    const auto topology = system.topology();
    return flpe::run( topology, system.initial(), *system.protocol(), make_adversary(), step_bound );
}

} // namespace flpe::harness
