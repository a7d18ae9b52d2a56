#include "common.hpp"
#include "flpe/protocols/protocols.hpp"

namespace flpe::protocols
{

namespace
{

using namespace detail;

class padded_protocol final : public protocol
{
    protocol_ptr base_;
    std::uint32_t k_;

    // The base sees a held-back decision as already taken.
    static process_state as_seen_by_base( const process_state& self )
    {
        process_state view = self;
        if ( self.locals.deferred )
            view.decision = self.locals.deferred;
        return view;
    }

    static actions hold_back( const process_state& self, actions a )
    {
        if ( !a.decide || a.locals.value_or( self.locals ).dummies_pending == 0 )
            return a;
        auto l = a.locals.value_or( self.locals );
        l.deferred = a.decide;
        a.decide.reset();
        a.locals = std::move( l );
        return a;
    }

public:
    padded_protocol( protocol_ptr base, std::uint32_t k ) : base_{ std::move( base ) }, k_{ k } {}

    std::string name() const override { return base_->name() + "-padded:" + std::to_string( k_ ); }

    actions on_init( const handler_context& ctx, const process_state& self ) const override
    {
        auto a = base_->on_init( ctx, self );
        std::vector< message > sends;
        for ( std::uint32_t i = 0; i < k_; ++i )
            sends.push_back( make_message( self.id, message_kind::dummy ) );
        sends.insert( sends.end(), a.sends.begin(), a.sends.end() );
        a.sends = std::move( sends );
        auto l = a.locals.value_or( self.locals );
        l.dummies_pending = k_;
        a.locals = std::move( l );
        return hold_back( self, std::move( a ) );
    }

    actions on_message( const handler_context& ctx, const process_state& self, const message& msg ) const override
    {
        if ( msg.kind == message_kind::dummy )
        {
            actions out;
            auto l = self.locals;
            if ( l.dummies_pending > 0 )
                --l.dummies_pending;
            if ( l.dummies_pending == 0 && l.deferred )
            {
                if ( !self.decision )
                    out.decide = l.deferred;
                l.deferred.reset();
            }
            out.locals = std::move( l );
            return out;
        }
        return hold_back( self, base_->on_message( ctx, as_seen_by_base( self ), msg ) );
    }

    bool timeouts_enabled() const override { return base_->timeouts_enabled(); }

    bool timeout_armed( const handler_context& ctx, const process_state& self ) const override
    {
        return !self.locals.deferred && base_->timeout_armed( ctx, self );
    }

    actions on_timeout( const handler_context& ctx, const process_state& self ) const override
    {
        return hold_back( self, base_->on_timeout( ctx, self ) );
    }

    std::optional< std::size_t > forcing_quorum() const override { return base_->forcing_quorum(); }
};

} // namespace

protocol_ptr pad_with_dummies( protocol_ptr base, std::uint32_t k )
{
    if ( k == 0 )
        return base;
    return std::make_shared< padded_protocol >( std::move( base ), k );
}

} // namespace flpe::protocols
