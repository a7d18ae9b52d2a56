#include "flpe/core/types.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace flpe
{

std::string_view to_string( message_kind kind )
{
    switch ( kind )
    {
    case message_kind::value_announce: return "value";
    case message_kind::view_announce: return "view";
    case message_kind::oracle_query: return "query";
    case message_kind::oracle_reply: return "reply";
    case message_kind::dummy: return "dummy";
    }
    return "?";
}

bool canonical_less( const message& a, const message& b )
{
    return std::tie( a.src.index, a.seq, a.dst.index ) < std::tie( b.src.index, b.seq, b.dst.index );
}

std::size_t configuration::crashed_count() const
{
    return static_cast< std::size_t >(
        std::count_if( states.begin(), states.end(), []( const process_state& s ) { return s.crashed; } ) );
}

std::string_view event_kind_name( const event& e )
{
    struct visitor
    {
        std::string_view operator()( const start_event& ) const { return "start"; }
        std::string_view operator()( const deliver_event& ) const { return "deliver"; }
        std::string_view operator()( const timeout_event& ) const { return "timeout"; }
        std::string_view operator()( const crash_event& ) const { return "crash"; }
    };
    return std::visit( visitor{}, e );
}

std::string describe( const event& e )
{
    std::ostringstream out;
    out << event_kind_name( e );
    if ( const auto* d = std::get_if< deliver_event >( &e ) )
    {
        out << ' ' << to_string( d->msg.kind ) << ' ' << d->msg.src.index << "->" << d->msg.dst.index << " #"
            << d->msg.seq;
    }
    else if ( const auto* s = std::get_if< start_event >( &e ) )
        out << " p" << s->process.index;
    else if ( const auto* t = std::get_if< timeout_event >( &e ) )
        out << " p" << t->process.index;
    else if ( const auto* c = std::get_if< crash_event >( &e ) )
        out << " p" << c->process.index;
    return out.str();
}

} // namespace flpe
