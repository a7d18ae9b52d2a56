#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flpe::logic
{

enum class connective : std::uint8_t
{
    atom,
    negation,
    consistency,  // the o operator
    conjunction,
    disjunction,
    implication,
};

namespace detail
{
struct node;
}

// Hash-consed propositional formula. Structurally equal formulas share one
// node, so equality and hashing are pointer operations. Nodes live for the
// lifetime of the process.
class formula
{
    const detail::node* node_ = nullptr;

    explicit formula( const detail::node* n ) : node_{ n } {}

public:
    formula() = default;

    [[nodiscard]] static formula atom( std::string_view name );
    [[nodiscard]] static formula neg( formula a );
    [[nodiscard]] static formula circ( formula a );
    [[nodiscard]] static formula conj( formula a, formula b );
    [[nodiscard]] static formula disj( formula a, formula b );
    [[nodiscard]] static formula impl( formula a, formula b );

    [[nodiscard]] bool valid() const { return node_ != nullptr; }
    [[nodiscard]] connective kind() const;
    [[nodiscard]] bool is_atom() const { return kind() == connective::atom; }
    [[nodiscard]] bool is_binary() const;
    [[nodiscard]] const std::string& name() const;  // atoms only
    [[nodiscard]] formula left() const;             // operand of unary connectives
    [[nodiscard]] formula right() const;
    [[nodiscard]] std::uint32_t id() const;         // creation order, process-local
    [[nodiscard]] unsigned depth() const;           // atoms have depth 1
    [[nodiscard]] std::size_t size() const;         // node count of the tree

    // Binary connectives are fully parenthesized: "(A & ~B)", "o(A -> B)".
    [[nodiscard]] std::string to_string() const;

    bool operator==( const formula& other ) const { return node_ == other.node_; }
    std::strong_ordering operator<=>( const formula& other ) const { return id() <=> other.id(); }

    friend struct formula_hash;
};

struct formula_hash
{
    std::size_t operator()( const formula& f ) const noexcept { return std::hash< const void* >{}( f.node_ ); }
};

using formula_set = std::set< formula >;

// Orders formulas for display: shallower first, then by text.
[[nodiscard]] bool display_less( const formula& a, const formula& b );
[[nodiscard]] std::vector< formula > sorted_for_display( const formula_set& s );

// Every distinct subformula, children before parents.
[[nodiscard]] std::vector< formula > subformulas( const formula& f );
[[nodiscard]] std::set< std::string > atoms_of( const formula_set& s );
[[nodiscard]] bool contains_consistency( const formula& f );

// Grammar: atom | ~F | oF | F & F | F | F | F -> F with precedence
// ~,o over & over | over ->, and -> associating to the right. Atoms are
// identifiers that do not start with a lowercase 'o'. Throws parse_error.
[[nodiscard]] formula parse_formula( std::string_view text );

// Comma separated list, possibly empty.
[[nodiscard]] std::vector< formula > parse_formula_list( std::string_view text );

// "F1, F2 |- G" into premises and goal.
[[nodiscard]] std::pair< formula_set, formula > parse_sequent( std::string_view text );

// Every formula over `atoms` of depth at most `depth` built from ~, &, |, ->,
// plus o when `with_consistency` is set. Ordered by depth, then construction.
[[nodiscard]] std::vector< formula > enumerate_formulas( const std::vector< std::string >& atoms, unsigned depth,
                                                         bool with_consistency = false );

} // namespace flpe::logic
