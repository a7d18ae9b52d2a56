#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace flpe
{

// Process masks are 64 bits wide, which bounds every topology.
inline constexpr std::size_t max_processes = 64;

struct process_id
{
    std::uint32_t index = 0;

    auto operator<=>( const process_id& ) const = default;
};

// A member of the finite value alphabet. The undecided marker is represented
// by an empty std::optional<value>, never by a payload.
struct value
{
    std::int32_t payload = 0;

    auto operator<=>( const value& ) const = default;
};

using output = std::optional< value >;

enum class message_kind : std::uint8_t
{
    value_announce,
    view_announce,
    oracle_query,
    oracle_reply,
    dummy,
};

[[nodiscard]] std::string_view to_string( message_kind kind );

struct crash_verdict
{
    process_id subject;
    bool crashed = false;

    auto operator<=>( const crash_verdict& ) const = default;
};

// Bitmask of the senders whose initial value a process has recorded.
struct known_set
{
    std::uint64_t mask = 0;

    auto operator<=>( const known_set& ) const = default;
};

using message_body = std::variant< std::monostate, value, crash_verdict, known_set >;

struct message
{
    process_id src;
    process_id dst;
    message_kind kind = message_kind::dummy;
    message_body body;
    std::uint32_t seq = 0;

    bool operator==( const message& ) const = default;
};

// Canonical in-flight order: (src, seq, dst). (src, seq) is unique per run.
[[nodiscard]] bool canonical_less( const message& a, const message& b );

// Protocol-owned per-process record. The core never interprets these fields;
// it only copies, compares and hashes them.
struct protocol_locals
{
    std::vector< std::optional< value > > values;         // by sender
    std::vector< std::optional< std::uint64_t > > views;  // by sender, second round
    std::uint64_t reported_crashed = 0;                    // subjects an oracle reported crashed
    std::uint64_t outstanding = 0;                         // oracles with an unanswered query
    bool view_sent = false;
    std::uint32_t dummies_pending = 0;
    std::optional< value > deferred;

    bool operator==( const protocol_locals& ) const = default;
};

struct process_state
{
    process_id id;
    value initial_value;  // unused for oracle processes
    output decision;      // y_p
    bool crashed = false;
    bool started = false;
    std::uint32_t next_seq = 0;
    protocol_locals locals;

    bool operator==( const process_state& ) const = default;
};

struct configuration
{
    std::vector< process_state > states;  // indexed by process id
    std::vector< message > in_flight;     // kept in canonical order

    bool operator==( const configuration& ) const = default;

    [[nodiscard]] const process_state& state( process_id p ) const { return states.at( p.index ); }
    [[nodiscard]] process_state& state( process_id p ) { return states.at( p.index ); }
    [[nodiscard]] std::size_t crashed_count() const;
};

struct start_event
{
    process_id process;
    bool operator==( const start_event& ) const = default;
};

struct deliver_event
{
    message msg;
    bool operator==( const deliver_event& ) const = default;
};

struct timeout_event
{
    process_id process;
    bool operator==( const timeout_event& ) const = default;
};

struct crash_event
{
    process_id process;
    bool operator==( const crash_event& ) const = default;
};

using event = std::variant< start_event, deliver_event, timeout_event, crash_event >;

[[nodiscard]] std::string_view event_kind_name( const event& e );
[[nodiscard]] std::string describe( const event& e );

} // namespace flpe
