#include "common.hpp"
#include "flpe/protocols/protocols.hpp"

namespace flpe::protocols
{

namespace
{

using namespace detail;

class oracle_protocol final : public protocol
{
public:
    std::string name() const override { return "oracle"; }

    actions on_init( const handler_context&, const process_state& ) const override { return {}; }

    actions on_message( const handler_context& ctx, const process_state& self, const message& msg ) const override
    {
        actions out;
        if ( msg.kind != message_kind::oracle_query )
            return out;
        auto target = ctx.topology.oracle_target( self.id );
        if ( !target )
            return out;
        while ( ctx.config.state( *target ).crashed && ctx.topology.is_oracle( *target ) )
            target = ctx.topology.oracle_target( *target );
        out.sends.push_back( make_message( msg.src, message_kind::oracle_reply,
                                           crash_verdict{ *target, ctx.config.state( *target ).crashed } ) );
        return out;
    }
};

class guarded_protocol final : public protocol
{
    protocol_ptr base_;
    std::set< process_id > oracles_;

    // Oracles whose monitoring chain reaches `subject`, nearest first.
    [[nodiscard]] std::vector< process_id > answerers( const system_topology& topology, process_id subject ) const
    {
        std::vector< std::pair< std::size_t, process_id > > ranked;
        for ( const auto& o : oracles_ )
        {
            if ( !topology.contains( o ) )
                continue;
            const auto chain = topology.monitoring_chain( o );
            if ( auto it = std::find( chain.begin(), chain.end(), subject ); it != chain.end() )
                ranked.emplace_back( static_cast< std::size_t >( it - chain.begin() ), o );
        }
        std::sort( ranked.begin(), ranked.end() );
        std::vector< process_id > out;
        for ( const auto& r : ranked )
            out.push_back( r.second );
        return out;
    }

    // Ordinary processes this one still waits for in its current round.
    [[nodiscard]] static std::vector< process_id > missing( const protocol_locals& l, process_id self, std::size_t n )
    {
        std::vector< process_id > out;
        for ( std::uint32_t i = 0; i < n; ++i )
        {
            const process_id q{ i };
            if ( q == self || ( l.reported_crashed & bit( q ) ) )
                continue;
            if ( l.view_sent ? !l.views[ i ] : !l.values[ i ] )
                out.push_back( q );
        }
        return out;
    }

    static void announce_view( const handler_context& ctx, const process_state& self, protocol_locals& l,
                               actions& out )
    {
        std::uint64_t mask = 0;
        for ( std::uint32_t i = 0; i < l.values.size(); ++i )
            if ( l.values[ i ] )
                mask |= bit( { i } );
        l.views[ self.id.index ] = mask;
        l.view_sent = true;
        for ( const auto& q : ctx.topology.at_level( 0 ) )
            if ( q != self.id )
                out.sends.push_back( make_message( q, message_kind::view_announce, known_set{ mask } ) );
    }

    static void advance( const handler_context& ctx, const process_state& self, protocol_locals& l, actions& out )
    {
        if ( self.decision || !self.started )
            return;
        const auto n = ordinary_count( ctx.topology );
        if ( !l.view_sent )
        {
            if ( !missing( l, self.id, n ).empty() )
                return;
            announce_view( ctx, self, l, out );
        }
        if ( !missing( l, self.id, n ).empty() )
            return;
        std::uint64_t common = ~std::uint64_t{ 0 };
        for ( const auto& v : l.views )
            if ( v )
                common &= *v;
        std::optional< value > best;
        for ( std::uint32_t i = 0; i < n; ++i )
            if ( ( common & bit( { i } ) ) && l.values[ i ] && ( !best || *l.values[ i ] < *best ) )
                best = l.values[ i ];
        out.decide = best;
    }

    // Next oracle to ask about each crashed subject still awaited: the
    // nearest one not known to have crashed and not already asked. A live
    // oracle that was asked is waited for.
    [[nodiscard]] std::uint64_t to_query( const handler_context& ctx, const protocol_locals& l, process_id self ) const
    {
        std::uint64_t mask = 0;
        for ( const auto& s : missing( l, self, ordinary_count( ctx.topology ) ) )
        {
            if ( !ctx.config.state( s ).crashed )
                continue;
            for ( const auto& o : answerers( ctx.topology, s ) )
            {
                if ( l.reported_crashed & bit( o ) )
                    continue;
                if ( l.outstanding & bit( o ) )
                {
                    if ( ctx.config.state( o ).crashed )
                        continue;
                    break;
                }
                mask |= bit( o );
                break;
            }
        }
        return mask;
    }

    [[nodiscard]] bool can_force( const protocol_locals& l ) const
    {
        const auto q = base_->forcing_quorum();
        return q && recorded_count( l ) >= *q;
    }

public:
    guarded_protocol( protocol_ptr base, std::set< process_id > oracles )
        : base_{ std::move( base ) }, oracles_{ std::move( oracles ) }
    {
    }

    std::string name() const override { return base_->name() + "-oracle"; }

    actions on_init( const handler_context& ctx, const process_state& self ) const override
    {
        auto l = sized_locals( self, ordinary_count( ctx.topology ) );
        actions out;
        announce_value( ctx.topology, self, l, out );
        advance( ctx, self, l, out );
        out.locals = std::move( l );
        return out;
    }

    actions on_message( const handler_context& ctx, const process_state& self, const message& msg ) const override
    {
        auto l = sized_locals( self, ordinary_count( ctx.topology ) );
        const auto src = msg.src.index;
        switch ( msg.kind )
        {
        case message_kind::value_announce:
            if ( const auto* v = std::get_if< value >( &msg.body ); v && src < l.values.size() && !l.values[ src ] )
                l.values[ src ] = *v;
            break;
        case message_kind::view_announce:
            if ( const auto* ks = std::get_if< known_set >( &msg.body ); ks && src < l.views.size() )
                l.views[ src ] = ks->mask;
            break;
        case message_kind::oracle_reply:
            l.outstanding &= ~bit( msg.src );
            if ( const auto* cv = std::get_if< crash_verdict >( &msg.body ); cv && cv->crashed )
                l.reported_crashed |= bit( cv->subject );
            break;
        default: return {};
        }
        actions out;
        advance( ctx, self, l, out );
        out.locals = std::move( l );
        return out;
    }

    bool timeouts_enabled() const override { return true; }

    bool timeout_armed( const handler_context& ctx, const process_state& self ) const override
    {
        const auto l = sized_locals( self, ordinary_count( ctx.topology ) );
        bool blocked = false;
        for ( const auto& s : missing( l, self.id, ordinary_count( ctx.topology ) ) )
        {
            if ( !ctx.config.state( s ).crashed )
                continue;
            const auto asked = answerers( ctx.topology, s );
            blocked = blocked || std::none_of( asked.begin(), asked.end(), [ & ]( process_id o ) {
                return ( l.outstanding & bit( o ) ) && !ctx.config.state( o ).crashed;
            } );
        }
        if ( !blocked )
            return false;
        return to_query( ctx, l, self.id ) != 0 || can_force( l );
    }

    actions on_timeout( const handler_context& ctx, const process_state& self ) const override
    {
        auto l = sized_locals( self, ordinary_count( ctx.topology ) );
        actions out;
        const auto ask = to_query( ctx, l, self.id );
        if ( ask != 0 )
        {
            for ( const auto& o : oracles_ )
                if ( ask & bit( o ) )
                    out.sends.push_back( make_message( o, message_kind::oracle_query ) );
            l.outstanding |= ask;
            out.locals = std::move( l );
        }
        else if ( can_force( l ) )
        {
            // Peers may still be waiting for this process's view.
            if ( !l.view_sent )
                announce_view( ctx, self, l, out );
            out.decide = min_recorded( l );
            out.locals = std::move( l );
        }
        return out;
    }

    std::optional< std::size_t > forcing_quorum() const override { return base_->forcing_quorum(); }
};

} // namespace

const protocol& oracle_behavior_ref()
{
    static const oracle_protocol instance;
    return instance;
}

protocol_ptr oracle_behavior() { return { std::shared_ptr< const protocol >{}, &oracle_behavior_ref() }; }

protocol_ptr augment_with_oracle( protocol_ptr base, std::set< process_id > oracles )
{
    if ( oracles.empty() )
        return base;
    return std::make_shared< guarded_protocol >( std::move( base ), std::move( oracles ) );
}

} // namespace flpe::protocols
