#pragma once

#include "flpe/core/protocol.hpp"
#include "flpe/core/topology.hpp"
#include "flpe/logic/logic_id.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace flpe::protocols
{

// Broadcast the own value, decide the minimum once every ordinary process
// has been heard from. Never times out.
[[nodiscard]] protocol_ptr floodmin();

// floodmin plus a timeout that decides the minimum seen so far, provided at
// least `quorum` values (own included) are known. The timeout is armed only
// while some process being waited on has crashed.
[[nodiscard]] protocol_ptr forced_floodmin( std::size_t quorum = 1 );

// forced_floodmin whose outcomes are read as a knowledge base in `logic`.
// Throws configuration_error for a non-paraconsistent logic.
[[nodiscard]] protocol_ptr paraconsistent_floodmin( logic::logic_id logic );

// Each process first sends itself k dummies and holds back any decision
// until they have all been consumed. k = 0 returns `base`.
[[nodiscard]] protocol_ptr pad_with_dummies( protocol_ptr base, std::uint32_t k );

// Two-round variant of `base` that asks the given oracles about processes
// it is stuck waiting for. Round one collects values (or crash verdicts),
// round two exchanges the sets of senders each process heard from; the
// decision is the minimum over senders everyone heard from. If the base
// forces termination and no oracle can help, the guarded protocol forces a
// decision too. An empty oracle set returns `base`.
[[nodiscard]] protocol_ptr augment_with_oracle( protocol_ptr base, std::set< process_id > oracles );

// Behavior of every oracle process: answer each query with one verdict about
// the monitored process. While that process is a crashed oracle the answer
// is about the next process down its chain instead.
[[nodiscard]] protocol_ptr oracle_behavior();
[[nodiscard]] const protocol& oracle_behavior_ref();

enum class base_kind
{
    floodmin,
    forced,
    paraconsistent,
};

// A protocol by parts, addressable by scenario key: p0, p1, p1-padded:k,
// p0-oracle, p1-oracle, p3:mbc. Padding and oracles may be combined, e.g.
// p1-oracle-padded:2.
struct protocol_recipe
{
    base_kind base = base_kind::floodmin;
    std::size_t quorum = 1;
    std::uint32_t padding = 0;
    bool oracle_guarded = false;
    logic::logic_id logic = logic::logic_id::mbc();

    // Throws configuration_error for an unknown key.
    [[nodiscard]] static protocol_recipe parse( std::string_view key );
    [[nodiscard]] std::string key() const;

    // Oracle guarding uses every oracle of `topology`.
    [[nodiscard]] protocol_ptr build( const system_topology& topology ) const;

    bool operator==( const protocol_recipe& ) const = default;
};

} // namespace flpe::protocols
