#pragma once

#include <string>
#include <string_view>

namespace flpe::logic
{

enum class logic_family
{
    cpl,
    cn,
    mbc,
};

// Highest da Costa level the engine accepts.
inline constexpr unsigned max_cn_level = 6;

struct logic_id
{
    logic_family family = logic_family::cpl;
    unsigned level = 0;  // only meaningful for cn

    [[nodiscard]] static constexpr logic_id cpl() { return { logic_family::cpl, 0 }; }
    [[nodiscard]] static constexpr logic_id mbc() { return { logic_family::mbc, 0 }; }
    [[nodiscard]] static logic_id cn( unsigned n );

    // Accepts "cpl", "mbc", "c1".."cN" (case-insensitive). Throws parse_error.
    [[nodiscard]] static logic_id parse( std::string_view text );

    [[nodiscard]] std::string name() const;
    [[nodiscard]] bool paraconsistent() const { return family != logic_family::cpl; }

    bool operator==( const logic_id& ) const = default;
};

} // namespace flpe::logic
