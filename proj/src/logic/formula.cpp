#include "flpe/logic/formula.hpp"

#include "flpe/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace flpe::logic
{

namespace detail
{

struct node
{
    connective kind;
    std::string name;
    const node* a;
    const node* b;
    std::uint32_t id;
    unsigned depth;
    std::size_t size;
};

} // namespace detail

namespace
{

using detail::node;

struct node_key
{
    connective kind;
    std::string name;
    const node* a;
    const node* b;

    bool operator==( const node_key& ) const = default;
};

struct node_key_hash
{
    std::size_t operator()( const node_key& k ) const noexcept
    {
        std::size_t h = std::hash< std::string >{}( k.name );
        h = h * 31 + static_cast< std::size_t >( k.kind );
        h = h * 0x9e3779b97f4a7c15ULL + std::hash< const void* >{}( k.a );
        h = h * 0x9e3779b97f4a7c15ULL + std::hash< const void* >{}( k.b );
        return h;
    }
};

class node_pool
{
    std::mutex mutex_;
    std::deque< node > nodes_;
    std::unordered_map< node_key, const node*, node_key_hash > index_;

public:
    const node* intern( connective kind, std::string_view name, const node* a, const node* b )
    {
        std::lock_guard lock{ mutex_ };
        node_key key{ kind, std::string{ name }, a, b };
        if ( auto it = index_.find( key ); it != index_.end() )
            return it->second;
        const unsigned depth = 1 + std::max( a ? a->depth : 0U, b ? b->depth : 0U );
        const std::size_t size = 1 + ( a ? a->size : 0 ) + ( b ? b->size : 0 );
        auto& n = nodes_.emplace_back(
            node{ kind, key.name, a, b, static_cast< std::uint32_t >( nodes_.size() ), depth, size } );
        index_.emplace( std::move( key ), &n );
        return &n;
    }
};

node_pool& pool()
{
    static node_pool instance;
    return instance;
}

void print( const node* n, std::string& out )
{
    switch ( n->kind )
    {
    case connective::atom: out += n->name; return;
    case connective::negation: out += '~'; print( n->a, out ); return;
    case connective::consistency: out += 'o'; print( n->a, out ); return;
    case connective::conjunction:
    case connective::disjunction:
    case connective::implication: break;
    }
    out += '(';
    print( n->a, out );
    out += n->kind == connective::conjunction ? " & " : n->kind == connective::disjunction ? " | " : " -> ";
    print( n->b, out );
    out += ')';
}

bool valid_atom_name( std::string_view name )
{
    if ( name.empty() || name.front() == 'o' )
        return false;
    if ( !std::isalpha( static_cast< unsigned char >( name.front() ) ) && name.front() != '_' )
        return false;
    return std::all_of( name.begin(), name.end(),
                        []( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_'; } );
}

} // namespace

formula formula::atom( std::string_view name )
{
    if ( !valid_atom_name( name ) )
        throw parse_error{ "invalid atom name '" + std::string{ name } + "'", 0 };
    return formula{ pool().intern( connective::atom, name, nullptr, nullptr ) };
}

formula formula::neg( formula a ) { return formula{ pool().intern( connective::negation, {}, a.node_, nullptr ) }; }
formula formula::circ( formula a ) { return formula{ pool().intern( connective::consistency, {}, a.node_, nullptr ) }; }

formula formula::conj( formula a, formula b )
{
    return formula{ pool().intern( connective::conjunction, {}, a.node_, b.node_ ) };
}

formula formula::disj( formula a, formula b )
{
    return formula{ pool().intern( connective::disjunction, {}, a.node_, b.node_ ) };
}

formula formula::impl( formula a, formula b )
{
    return formula{ pool().intern( connective::implication, {}, a.node_, b.node_ ) };
}

connective formula::kind() const { return node_->kind; }

bool formula::is_binary() const
{
    const auto k = kind();
    return k == connective::conjunction || k == connective::disjunction || k == connective::implication;
}

const std::string& formula::name() const { return node_->name; }
formula formula::left() const { return formula{ node_->a }; }
formula formula::right() const { return formula{ node_->b }; }
std::uint32_t formula::id() const { return node_ ? node_->id : 0; }
unsigned formula::depth() const { return node_->depth; }
std::size_t formula::size() const { return node_->size; }

std::string formula::to_string() const
{
    std::string out;
    print( node_, out );
    return out;
}

bool display_less( const formula& a, const formula& b )
{
    if ( a.depth() != b.depth() )
        return a.depth() < b.depth();
    return a.to_string() < b.to_string();
}

std::vector< formula > sorted_for_display( const formula_set& s )
{
    std::vector< formula > out{ s.begin(), s.end() };
    std::sort( out.begin(), out.end(), display_less );
    return out;
}

std::vector< formula > subformulas( const formula& f )
{
    std::vector< formula > out;
    std::unordered_set< formula, formula_hash > seen;
    auto visit = [ & ]( auto&& self, formula g ) -> void {
        if ( seen.contains( g ) )
            return;
        if ( !g.is_atom() )
            self( self, g.left() );
        if ( g.is_binary() )
            self( self, g.right() );
        seen.insert( g );
        out.push_back( g );
    };
    visit( visit, f );
    return out;
}

std::set< std::string > atoms_of( const formula_set& s )
{
    std::set< std::string > out;
    for ( const auto& f : s )
        for ( const auto& g : subformulas( f ) )
            if ( g.is_atom() )
                out.insert( g.name() );
    return out;
}

bool contains_consistency( const formula& f )
{
    const auto subs = subformulas( f );
    return std::any_of( subs.begin(), subs.end(),
                        []( const formula& g ) { return g.kind() == connective::consistency; } );
}

std::vector< formula > enumerate_formulas( const std::vector< std::string >& atoms, unsigned depth,
                                           bool with_consistency )
{
    if ( depth == 0 )
        return {};
    std::vector< formula > all;
    for ( const auto& a : atoms )
        all.push_back( formula::atom( a ) );
    for ( unsigned d = 2; d <= depth; ++d )
    {
        const std::vector< formula > prev = all;
        std::vector< formula > next;
        for ( const auto& a : atoms )
            next.push_back( formula::atom( a ) );
        for ( const auto& x : prev )
            next.push_back( formula::neg( x ) );
        if ( with_consistency )
            for ( const auto& x : prev )
                next.push_back( formula::circ( x ) );
        for ( const auto& x : prev )
            for ( const auto& y : prev )
            {
                next.push_back( formula::conj( x, y ) );
                next.push_back( formula::disj( x, y ) );
                next.push_back( formula::impl( x, y ) );
            }
        all = std::move( next );
    }
    std::stable_sort( all.begin(), all.end(),
                      []( const formula& a, const formula& b ) { return a.depth() < b.depth(); } );
    return all;
}

} // namespace flpe::logic
