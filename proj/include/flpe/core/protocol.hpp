#pragma once

#include "flpe/core/topology.hpp"
#include "flpe/core/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flpe
{

// Read-only view handed to protocol handlers. Handlers may consult the
// current configuration only where the model grants ground truth (oracles,
// timeout arming); ordinary handler logic must rely on `self`.
struct handler_context
{
    const system_topology& topology;
    const configuration& config;
};

struct actions
{
    // src and seq are assigned by the core when the actions are applied.
    std::vector< message > sends;
    std::optional< value > decide;
    std::optional< protocol_locals > locals;

    bool operator==( const actions& ) const = default;
    [[nodiscard]] bool empty() const { return sends.empty() && !decide && !locals; }
};

// A consensus algorithm as a bundle of pure event handlers.
class protocol
{
public:
    virtual ~protocol() = default;

    [[nodiscard]] virtual std::string name() const = 0;

    [[nodiscard]] virtual actions on_init( const handler_context& ctx, const process_state& self ) const = 0;
    [[nodiscard]] virtual actions on_message( const handler_context& ctx, const process_state& self,
                                              const message& msg ) const = 0;
    [[nodiscard]] virtual actions on_timeout( const handler_context&, const process_state& ) const { return {}; }

    [[nodiscard]] virtual bool timeouts_enabled() const { return false; }

    // Whether the environment may fire a timeout at `self` now. Only called
    // for started, live, undecided processes of protocols with timeouts.
    [[nodiscard]] virtual bool timeout_armed( const handler_context&, const process_state& ) const { return false; }

    // Quorum for forced decisions, if the protocol forces termination.
    [[nodiscard]] virtual std::optional< std::size_t > forcing_quorum() const { return std::nullopt; }
};

using protocol_ptr = std::shared_ptr< const protocol >;

} // namespace flpe
