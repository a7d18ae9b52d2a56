#include "common.hpp"
#include "flpe/core/errors.hpp"
#include "flpe/protocols/protocols.hpp"

namespace flpe::protocols
{

namespace
{

using namespace detail;

class floodmin_protocol final : public protocol
{
    std::optional< std::size_t > quorum_;
    std::string name_;

    static void decide_when_complete( const process_state& self, protocol_locals& l, std::size_t n, actions& out )
    {
        if ( !self.decision && recorded_count( l ) == n )
            out.decide = min_recorded( l );
    }

public:
    floodmin_protocol( std::optional< std::size_t > quorum, std::string name )
        : quorum_{ quorum }, name_{ std::move( name ) }
    {
    }

    std::string name() const override { return name_; }

    actions on_init( const handler_context& ctx, const process_state& self ) const override
    {
        const auto n = ordinary_count( ctx.topology );
        auto l = sized_locals( self, n );
        actions out;
        announce_value( ctx.topology, self, l, out );
        decide_when_complete( self, l, n, out );
        out.locals = std::move( l );
        return out;
    }

    actions on_message( const handler_context& ctx, const process_state& self, const message& msg ) const override
    {
        const auto* v = std::get_if< value >( &msg.body );
        if ( msg.kind != message_kind::value_announce || !v )
            return {};
        const auto n = ordinary_count( ctx.topology );
        auto l = sized_locals( self, n );
        if ( l.values.at( msg.src.index ) )
            return {};
        l.values[ msg.src.index ] = *v;
        actions out;
        if ( self.started )
            decide_when_complete( self, l, n, out );
        out.locals = std::move( l );
        return out;
    }

    bool timeouts_enabled() const override { return quorum_.has_value(); }

    bool timeout_armed( const handler_context& ctx, const process_state& self ) const override
    {
        if ( !quorum_ )
            return false;
        const auto n = ordinary_count( ctx.topology );
        const auto l = sized_locals( self, n );
        if ( recorded_count( l ) < *quorum_ )
            return false;
        for ( std::uint32_t i = 0; i < n; ++i )
            if ( !l.values[ i ] && ctx.config.state( { i } ).crashed )
                return true;
        return false;
    }

    actions on_timeout( const handler_context& ctx, const process_state& self ) const override
    {
        actions out;
        if ( !quorum_ || self.decision )
            return out;
        const auto l = sized_locals( self, ordinary_count( ctx.topology ) );
        if ( recorded_count( l ) >= *quorum_ )
            out.decide = min_recorded( l );
        return out;
    }

    std::optional< std::size_t > forcing_quorum() const override { return quorum_; }
};

} // namespace

protocol_ptr floodmin() { return std::make_shared< floodmin_protocol >( std::nullopt, "p0" ); }

protocol_ptr forced_floodmin( std::size_t quorum )
{
    if ( quorum == 0 )
        throw configuration_error{ "timeout quorum must be at least 1" };
    return std::make_shared< floodmin_protocol >( quorum, "p1" );
}

protocol_ptr paraconsistent_floodmin( logic::logic_id logic )
{
    if ( !logic.paraconsistent() )
        throw configuration_error{ "p3 needs a paraconsistent logic, got " + logic.name() };
    return std::make_shared< floodmin_protocol >( 1, "p3:" + logic.name() );
}

} // namespace flpe::protocols
