#include "flpe/core/errors.hpp"
#include "flpe/logic/formula.hpp"

#include <cctype>

namespace flpe::logic
{

namespace
{

class parser
{
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_space()
    {
        while ( pos_ < text_.size() && std::isspace( static_cast< unsigned char >( text_[ pos_ ] ) ) )
            ++pos_;
    }

    bool peek( std::string_view token )
    {
        skip_space();
        return text_.substr( pos_ ).starts_with( token );
    }

    bool accept( std::string_view token )
    {
        if ( !peek( token ) )
            return false;
        pos_ += token.size();
        return true;
    }

    [[noreturn]] void fail( const std::string& what ) const { throw parse_error{ what, pos_ }; }

    formula implication()
    {
        auto lhs = disjunction();
        if ( accept( "->" ) )
            return formula::impl( lhs, implication() );
        return lhs;
    }

    formula disjunction()
    {
        auto lhs = conjunction();
        while ( !peek( "|-" ) && accept( "|" ) )
            lhs = formula::disj( lhs, conjunction() );
        return lhs;
    }

    formula conjunction()
    {
        auto lhs = unary();
        while ( accept( "&" ) )
            lhs = formula::conj( lhs, unary() );
        return lhs;
    }

    formula unary()
    {
        skip_space();
        if ( pos_ >= text_.size() )
            fail( "unexpected end of formula" );
        if ( accept( "~" ) )
            return formula::neg( unary() );
        if ( text_[ pos_ ] == 'o' )
        {
            ++pos_;
            return formula::circ( unary() );
        }
        if ( accept( "(" ) )
        {
            auto inner = implication();
            if ( !accept( ")" ) )
                fail( "expected ')'" );
            return inner;
        }
        const auto start = pos_;
        while ( pos_ < text_.size() &&
                ( std::isalnum( static_cast< unsigned char >( text_[ pos_ ] ) ) || text_[ pos_ ] == '_' ) )
            ++pos_;
        if ( start == pos_ || std::isdigit( static_cast< unsigned char >( text_[ start ] ) ) )
        {
            pos_ = start;
            fail( "expected a formula" );
        }
        return formula::atom( text_.substr( start, pos_ - start ) );
    }

public:
    explicit parser( std::string_view text ) : text_{ text } {}

    formula whole()
    {
        auto f = implication();
        skip_space();
        if ( pos_ != text_.size() )
            fail( "unexpected '" + std::string{ text_[ pos_ ] } + "'" );
        return f;
    }

    std::vector< formula > list( bool stop_at_turnstile )
    {
        std::vector< formula > out;
        skip_space();
        if ( pos_ == text_.size() || ( stop_at_turnstile && peek( "|-" ) ) )
            return out;
        out.push_back( implication() );
        while ( accept( "," ) )
            out.push_back( implication() );
        return out;
    }

    std::pair< formula_set, formula > sequent()
    {
        auto premises = list( true );
        if ( !accept( "|-" ) )
            fail( "expected '|-'" );
        auto goal = whole();
        return { formula_set{ premises.begin(), premises.end() }, goal };
    }

    void finish()
    {
        skip_space();
        if ( pos_ != text_.size() )
            fail( "unexpected '" + std::string{ text_[ pos_ ] } + "'" );
    }
};

} // namespace

formula parse_formula( std::string_view text ) { return parser{ text }.whole(); }

std::vector< formula > parse_formula_list( std::string_view text )
{
    parser p{ text };
    auto out = p.list( false );
    p.finish();
    return out;
}

std::pair< formula_set, formula > parse_sequent( std::string_view text ) { return parser{ text }.sequent(); }

} // namespace flpe::logic
