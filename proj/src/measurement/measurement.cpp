#include "flpe/measurement/measurement.hpp"

#include "flpe/core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <numeric>

namespace flpe
{

namespace
{

std::size_t parse_count( std::string_view text, std::string_view what )
{
    std::size_t v = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ ptr, ec ] = std::from_chars( first, last, v );
    if ( ec != std::errc{} || ptr != last || first == last )
        throw configuration_error{ "bad " + std::string{ what } + " '" + std::string{ text } + "'" };
    return v;
}

std::size_t violations( const property_profile& p )
{
    return ( p.termination ? 0 : 1 ) + ( p.consistency ? 0 : 1 ) + ( p.non_triviality ? 0 : 1 );
}

std::vector< output > ordinary_decisions( const configuration& config, const system_topology& topology )
{
    std::vector< output > out;
    for ( const auto& p : topology.ordinary_processes() )
        out.push_back( config.state( p ).decision );
    return out;
}

} // namespace

measured measure_termination( const execution& ex )
{
    return { profile_of( ex.final_config(), ex.topology ).termination, ex.truncated };
}

bool measure_consistency( const execution& ex ) { return profile_of( ex.final_config(), ex.topology ).consistency; }

bool measure_nontriviality( const execution& ex )
{
    return profile_of( ex.final_config(), ex.topology ).non_triviality;
}

property_profile measure( const execution& ex ) { return profile_of( ex.final_config(), ex.topology ); }

std::size_t count_faulty( const execution& ex, unsigned level )
{
    const auto& c = ex.final_config();
    std::size_t n = 0;
    for ( const auto& p : ex.topology.at_level( level ) )
        if ( c.state( p ).crashed )
            ++n;
    return n;
}

std::size_t count_faulty_total( const execution& ex ) { return ex.final_config().crashed_count(); }

bool maximal_level_condition( const execution& ex ) { return count_faulty( ex, ex.topology.max_level() ) == 1; }

std::optional< std::size_t > first_inconsistent_index( const execution& ex )
{
    for ( std::size_t t = 0; t <= ex.length(); ++t )
        if ( !profile_of( ex.config_at( t ), ex.topology ).consistency )
            return t;
    return std::nullopt;
}

system_topology system_spec::topology() const
{
    auto t = system_topology::complete( values.size() );
    for ( const auto& u : known_faulty )
    {
        if ( !t.contains( u ) )
            throw topology_error{ "known-faulty process p" + std::to_string( u.index ) + " is not in the system" };
        auto target = u;
        for ( unsigned d = 0; d < oracle_depth; ++d )
        {
            t = add_oracle( t, target );
            target = { static_cast< std::uint32_t >( t.size() - 1 ) };
        }
    }
    return t;
}

configuration system_spec::initial() const { return initial_configuration( topology(), values ); }

protocol_ptr system_spec::protocol() const { return recipe.build( topology() ); }

crash_budget system_spec::effective_budget() const
{
    auto b = budget;
    if ( known_faulty.empty() )
        return b;
    for ( std::uint32_t i = 0; i < values.size(); ++i )
        if ( !known_faulty.contains( { i } ) )
            b.immune.insert( { i } );
    return b;
}

feature_id feature_id::parse( std::string_view text )
{
    if ( text == "faults" )
        return { feature_kind::fault_count, 0 };
    if ( text.starts_with( "level:" ) )
        return { feature_kind::fault_count_at_level,
                 static_cast< unsigned >( parse_count( text.substr( 6 ), "feature level" ) ) };
    if ( text == "termination" )
        return { feature_kind::termination, 0 };
    if ( text == "consistency" )
        return { feature_kind::consistency, 0 };
    if ( text == "non-triviality" )
        return { feature_kind::non_triviality, 0 };
    throw configuration_error{ "unknown feature '" + std::string{ text } + "'" };
}

std::string feature_id::to_string() const
{
    switch ( kind )
    {
    case feature_kind::termination: return "termination";
    case feature_kind::consistency: return "consistency";
    case feature_kind::non_triviality: return "non-triviality";
    case feature_kind::fault_count: return "faults";
    case feature_kind::fault_count_at_level: return "level:" + std::to_string( level );
    }
    return "?";
}

crash_budget budget_for( const crash_budget& base, const feature_id& feature, std::size_t v )
{
    auto b = base;
    if ( feature.kind == feature_kind::fault_count )
    {
        b.total = v;
        return b;
    }
    if ( feature.kind != feature_kind::fault_count_at_level )
        throw configuration_error{ "feature '" + feature.to_string() + "' cannot be swept" };
    if ( b.level_caps.size() <= feature.level )
        b.level_caps.resize( feature.level + 1, 0 );
    b.level_caps[ feature.level ] = v;
    b.total = std::accumulate( b.level_caps.begin(), b.level_caps.end(), std::size_t{ 0 } );
    return b;
}

const execution* sweep_row::witness() const
{
    const execution* best = nullptr;
    std::size_t worst = 0;
    for ( const auto& [ p, ex ] : exploration.witnesses )
        if ( !best || violations( p ) > worst )
        {
            best = &ex;
            worst = violations( p );
        }
    return best;
}

std::vector< sweep_row > sweep( const system_spec& spec, const feature_id& feature, std::size_t from, std::size_t to )
{
    const auto topology = spec.topology();
    const auto initial = spec.initial();
    const auto consensus = spec.protocol();
    std::vector< std::future< sweep_row > > pending;
    for ( std::size_t v = from; v <= to; ++v )
    {
        auto s = spec;
        s.budget = budget_for( spec.budget, feature, v );
        pending.push_back( std::async( std::launch::async, [ &, v, budget = s.effective_budget() ] {
            return sweep_row{ v, explore( topology, initial, *consensus, budget, spec.bounds ) };
        } ) );
    }
    std::vector< sweep_row > rows;
    for ( auto& p : pending )
        rows.push_back( p.get() );
    return rows;
}

std::optional< phase_transition_report > find_transition( const feature_id& feature,
                                                          const std::vector< sweep_row >& rows )
{
    for ( std::size_t i = 1; i < rows.size(); ++i )
    {
        const auto before = rows[ i - 1 ].worst();
        const auto after = rows[ i ].worst();
        if ( before == after )
            continue;
        const auto earlier = rows[ i - 1 ].profiles();
        const execution* witness = nullptr;
        std::size_t worst = 0;
        for ( const auto& [ p, ex ] : rows[ i ].exploration.witnesses )
            if ( !earlier.contains( p ) && ( !witness || violations( p ) > worst ) )
            {
                witness = &ex;
                worst = violations( p );
            }
        if ( !witness )
            witness = rows[ i ].witness();
        return phase_transition_report{ feature, rows[ i ].value, before, after, *witness };
    }
    return std::nullopt;
}

transformation transformation::parse( std::string_view text )
{
    if ( text == "oracle" )
        return { kind_t::add_oracle, 0 };
    if ( text.starts_with( "pad:" ) )
        return { kind_t::pad, static_cast< std::uint32_t >( parse_count( text.substr( 4 ), "padding" ) ) };
    throw configuration_error{ "unknown transformation '" + std::string{ text } + "'" };
}

std::string transformation::to_string() const
{
    return kind == kind_t::add_oracle ? "oracle" : "pad:" + std::to_string( k );
}

std::string emergence_verdict::summary() const
{
    if ( !applicable )
        return "NOT APPLICABLE: no phase transition in the baseline sweep";
    if ( !recurred )
        return "NOT RECURRED after " + postponement;
    if ( postponement.starts_with( "padding" ) )
        return "RECURRED, step index shifted " + std::string{ step_shift >= 0 ? "+" : "" } +
               std::to_string( step_shift );
    return "RECURRED at level " + std::to_string( level );
}

std::vector< event > padded_schedule( const std::vector< event >& events, std::uint32_t k,
                                      const system_topology& topology )
{
    std::vector< event > out;
    for ( const auto& e : events )
    {
        if ( const auto* d = std::get_if< deliver_event >( &e ) )
        {
            auto m = d->msg;
            if ( !topology.is_oracle( m.src ) )
                m.seq += k;
            out.emplace_back( deliver_event{ m } );
            continue;
        }
        out.push_back( e );
        if ( const auto* s = std::get_if< start_event >( &e ) )
            for ( std::uint32_t i = 0; i < k; ++i )
            {
                message m;
                m.src = s->process;
                m.dst = s->process;
                m.kind = message_kind::dummy;
                m.seq = i;
                out.emplace_back( deliver_event{ m } );
            }
    }
    return out;
}

emergence_verdict check_emergence( const system_spec& spec, const feature_id& feature, std::size_t from,
                                   std::size_t to, const transformation& t )
{
    emergence_verdict v;
    v.baseline = find_transition( feature, sweep( spec, feature, from, to ) );
    if ( !v.baseline )
        return v;
    v.applicable = true;
    const auto& base = *v.baseline;

    auto next = spec;
    feature_id next_feature = feature;
    const unsigned level = feature.kind == feature_kind::fault_count_at_level ? feature.level : 0;

    if ( t.kind == transformation::kind_t::add_oracle )
    {
        const auto& witness_topology = base.witness.topology;
        std::set< process_id > crashed;
        for ( const auto& p : witness_topology.at_level( level ) )
            if ( base.witness.final_config().state( p ).crashed )
                crashed.insert( p );
        if ( level == 0 && spec.oracle_depth == 0 )
        {
            next.known_faulty = crashed;
            next.oracle_depth = 1;
        }
        else if ( level == spec.oracle_depth )
            ++next.oracle_depth;
        else
            throw configuration_error{ "oracles can only be added above the topmost hierarchy level" };
        next.recipe.oracle_guarded = true;
        auto b = budget_for( spec.budget, feature, base.transition_at );
        if ( b.level_caps.empty() )
            b.level_caps = { b.total };
        if ( b.level_caps.size() <= level )
            b.level_caps.resize( level + 1, 0 );
        b.level_caps[ level ] = base.transition_at;
        b.level_caps.resize( level + 1 );
        next.budget = budget_for( b, { feature_kind::fault_count_at_level, level + 1 }, 0 );
        next_feature = { feature_kind::fault_count_at_level, level + 1 };
        v.postponement = "oracle added above level " + std::to_string( level );
        v.level = level + 1;
    }
    else
    {
        next.recipe.padding += t.k;
        v.postponement = "padding with " + std::to_string( t.k ) + " dummies";
        v.level = level;
    }
    v.transformed_spec = next;
    v.transformed = find_transition( next_feature, sweep( next, next_feature, from, to ) );
    v.recurred = v.transformed && v.transformed->before == base.before && v.transformed->after == base.after;
    if ( v.transformed )
        v.recurred_at = v.transformed->transition_at;

    if ( t.kind == transformation::kind_t::pad && v.recurred )
    {
        auto bounds = spec.bounds;
        bounds.crash_started_only = true;
        auto at_transition = spec;
        at_transition.budget = budget_for( spec.budget, feature, base.transition_at );
        const auto started = explore( at_transition.topology(), at_transition.initial(), *at_transition.protocol(),
                                      at_transition.effective_budget(), bounds );
        const auto found = started.witnesses.find( base.after );
        const auto& w = found != started.witnesses.end() ? found->second : base.witness;
        auto s = next;
        s.budget = budget_for( next.budget, next_feature, base.transition_at );
        const auto padded = replay( w.topology, w.initial, *s.protocol(), s.effective_budget(),
                                    padded_schedule( w.events(), t.k, w.topology ) );
        const auto at = []( const execution& ex ) {
            return first_inconsistent_index( ex ).value_or( ex.length() );
        };
        v.step_shift = static_cast< long >( at( padded ) ) - static_cast< long >( at( w ) );
        v.decisions_preserved = ordinary_decisions( padded.final_config(), w.topology ) ==
                                ordinary_decisions( w.final_config(), w.topology );
        v.recurred = v.recurred && v.decisions_preserved && v.step_shift > 0;
    }
    return v;
}

logic::formula decision_atom( value v )
{
    return logic::formula::atom( v.payload < 0 ? "Dm" + std::to_string( -static_cast< long >( v.payload ) )
                                               : "D" + std::to_string( v.payload ) );
}

logic::formula_set encode_outcome( const configuration& config, const system_topology& topology,
                                   const std::vector< value >& alphabet )
{
    std::set< value > decided;
    for ( const auto& p : topology.ordinary_processes() )
        if ( const auto& d = config.state( p ).decision )
            decided.insert( *d );
    std::set< value > universe{ alphabet.begin(), alphabet.end() };
    universe.insert( decided.begin(), decided.end() );

    logic::formula_set gamma;
    for ( const auto& v : decided )
        gamma.insert( decision_atom( v ) );
    for ( const auto& a : universe )
        for ( const auto& b : universe )
            if ( a != b )
                gamma.insert( logic::formula::impl( decision_atom( a ), logic::formula::neg( decision_atom( b ) ) ) );
    return gamma;
}

logic::formula_set encode_outcome( const execution& ex, const std::vector< value >& alphabet )
{
    return encode_outcome( ex.final_config(), ex.topology, alphabet );
}

std::vector< value > default_alphabet()
{
    std::vector< value > out;
    for ( std::int32_t v = 0; v <= 9; ++v )
        out.push_back( { v } );
    return out;
}

} // namespace flpe
