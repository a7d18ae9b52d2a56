#pragma once

#include "flpe/core/topology.hpp"
#include "flpe/core/types.hpp"

#include <compare>
#include <set>
#include <string>
#include <string_view>

namespace flpe
{

// (termination, consistency, non-triviality) of one outcome.
struct property_profile
{
    bool termination = true;
    bool consistency = true;
    bool non_triviality = true;

    auto operator<=>( const property_profile& ) const = default;

    // "(T,F,T)"
    [[nodiscard]] std::string to_string() const;
    // Accepts "(T,F,T)" or "TFT". Throws parse_error.
    [[nodiscard]] static property_profile parse( std::string_view text );
};

// Termination looks at live ordinary processes; consistency and
// non-triviality at every ordinary process that decided, crashed or not.
// Both hold vacuously when nobody decided.
[[nodiscard]] property_profile profile_of( const configuration& config, const system_topology& topology );

// Componentwise conjunction: a property fails if any member fails it.
[[nodiscard]] property_profile worst_profile( const std::set< property_profile >& profiles );

// "(T,T,T);(T,F,T)" in set order.
[[nodiscard]] std::string to_string( const std::set< property_profile >& profiles );

} // namespace flpe
