#include "bpcalc/render.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace bpcalc {

namespace {

std::string monomial_text(const Monomial& m, Basis basis)
{
    std::string out;
    for (int g = 1; g <= Monomial::kMaxGenerators; ++g) {
        const unsigned e = m.exponent(g);
        if (e == 0)
            continue;
        if (!out.empty())
            out += ' ';
        out += basis_letter(basis);
        out += std::to_string(g);
        if (e != 1)
            out += '^' + std::to_string(e);
    }
    return out;
}

template <class S>
int sign_of(const S& c)
{
    return sgn(c);
}

// Writes "c mono" for the absolute value of c.
template <class S>
std::string abs_term(const S& c, const Monomial& m, Basis basis)
{
    const S a = abs(c);
    const std::string mono = monomial_text(m, basis);
    if (mono.empty())
        return to_string(a);
    if (a == 1)
        return mono;
    return to_string(a) + ' ' + mono;
}

std::string variable_text(int i, int j)
{
    std::string out;
    if (i > 0)
        out += i == 1 ? "xi" : "xi^" + std::to_string(i);
    if (j > 0) {
        if (!out.empty())
            out += ' ';
        out += j == 1 ? "x" : "x^" + std::to_string(j);
    }
    return out;
}

} // namespace

template <class S>
std::string render_polynomial(const GradedPolynomial<S>& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        const bool neg = sign_of(t.coefficient) < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += abs_term(t.coefficient, t.monomial, p.basis());
        first = false;
    }
    return out;
}

template <class S>
std::string render_series(const TruncatedSeries<S>& s)
{
    std::string out;
    s.for_each_nonzero([&](int i, int j, const GradedPolynomial<S>& c) {
        const std::string vars = variable_text(i, j);
        if (c.size() == 1) {
            const auto& t = c.terms()[0];
            const bool neg = sign_of(t.coefficient) < 0;
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            std::string body = abs_term(t.coefficient, t.monomial, c.basis());
            if (!vars.empty()) {
                if (body == "1")
                    body = vars;
                else
                    body += ' ' + vars;
            }
            out += body;
        } else {
            out += out.empty() ? "" : " + ";
            out += vars.empty() ? render_polynomial(c) : '(' + render_polynomial(c) + ") " + vars;
        }
    });
    if (out.empty())
        out = "0";
    if (s.x_cap() == TruncatedSeries<S>::kUnbounded && s.is_univariate())
        out += " + O(xi^" + std::to_string(s.validity()) + ')';
    else
        out += " + O((xi, x)^" + std::to_string(s.validity()) + ')';
    if (s.x_cap() != TruncatedSeries<S>::kUnbounded)
        out += " + O(x^" + std::to_string(s.x_cap() + 1) + ')';
    return out;
}

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool done()
    {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(std::string_view token)
    {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token)
    {
        if (!accept(token))
            fail("expected '" + std::string(token) + "'");
    }

    std::string digits()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::string(text_.substr(start, pos_ - start));
    }

    int small_number()
    {
        const auto d = digits();
        if (d.size() > 9)
            fail("exponent too large");
        return std::stoi(d);
    }

    // Optional "^e", default 1.
    int exponent() { return accept("^") ? small_number() : 1; }

    bool at_identifier(std::string_view name)
    {
        skip_space();
        if (text_.substr(pos_, name.size()) != name)
            return false;
        const std::size_t after = pos_ + name.size();
        return after >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[after]));
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

// Parses "[coef] [gens]" with the sign already consumed. Returns false if nothing matched.
bool parse_monomial_term(Lexer& lex, Basis basis, Rational& coef, Monomial& mono)
{
    bool any = false;
    coef = 1;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
        std::string num = lex.digits();
        if (lex.accept("/"))
            num += '/' + lex.digits();
        coef = parse_rational(num);
        any = true;
    }
    const char letter = basis_letter(basis);
    while (lex.peek() == letter) {
        lex.accept(std::string(1, letter));
        const int g = lex.small_number();
        const int e = lex.exponent();
        if (g < 1 || g > Monomial::kMaxGenerators)
            lex.fail("generator index out of range");
        mono.set_exponent(g, mono.exponent(g) + static_cast<unsigned>(e));
        any = true;
    }
    return any;
}

RationalPolynomial parse_polynomial_body(Lexer& lex, Basis basis, bool stop_at_paren)
{
    RationalPolynomial out(basis);
    bool first = true;
    while (!lex.done() && !(stop_at_paren && lex.peek() == ')')) {
        int sign = 1;
        if (lex.accept("-"))
            sign = -1;
        else if (!lex.accept("+") && !first)
            lex.fail("expected '+' or '-'");
        Rational c;
        Monomial m;
        if (!parse_monomial_term(lex, basis, c, m))
            lex.fail("expected a term");
        out.add_term(m, c * sign);
        first = false;
    }
    return out;
}

} // namespace

RationalPolynomial parse_polynomial(std::string_view text, Basis basis)
{
    Lexer lex(text);
    if (lex.accept("0") && lex.done())
        return RationalPolynomial(basis);
    Lexer fresh(text);
    return parse_polynomial_body(fresh, basis, false);
}

RationalSeries parse_series(std::string_view text, int prime, Basis basis)
{
    Lexer lex(text);
    std::map<std::pair<int, int>, RationalPolynomial> coeffs;
    int validity = -1;
    int x_cap = RationalSeries::kUnbounded;
    bool first = true;
    while (!lex.done()) {
        int sign = 1;
        if (lex.accept("-"))
            sign = -1;
        else if (!lex.accept("+") && !first)
            lex.fail("expected '+' or '-'");
        first = false;

        if (lex.accept("O(")) {
            if (lex.accept("(xi, x)^") || lex.accept("xi^")) {
                validity = lex.small_number();
            } else if (lex.accept("x^")) {
                x_cap = lex.small_number() - 1;
            } else {
                lex.fail("malformed order term");
            }
            lex.expect(")");
            continue;
        }

        RationalPolynomial c(basis);
        if (lex.accept("(")) {
            c = parse_polynomial_body(lex, basis, true);
            lex.expect(")");
        } else {
            Rational r;
            Monomial m;
            const bool had = parse_monomial_term(lex, basis, r, m);
            if (had)
                c = RationalPolynomial::monomial(m, r, basis);
            else
                c = RationalPolynomial::constant(1, basis);
        }
        int i = 0;
        int j = 0;
        bool var = false;
        while (true) {
            if (lex.at_identifier("xi")) {
                lex.accept("xi");
                i += lex.exponent();
                var = true;
            } else if (lex.at_identifier("x")) {
                lex.accept("x");
                j += lex.exponent();
                var = true;
            } else {
                break;
            }
        }
        (void)var;
        coeffs[{i, j}] += c * Rational(sign);
    }
    if (validity < 0)
        throw ParseError("series text has no order term");
    RationalSeries out(prime, basis, validity, x_cap);
    for (auto& [ij, c] : coeffs) {
        if (c.is_zero())
            continue;
        if (!out.known(ij.first, ij.second))
            throw ParseError("term beyond the stated order");
        out.set_coefficient(ij.first, ij.second, c);
    }
    return out;
}

template <class S>
Json polynomial_to_json(const GradedPolynomial<S>& p)
{
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json exps = Json::object();
        for (int g = 1; g <= Monomial::kMaxGenerators; ++g) {
            if (t.monomial.exponent(g) != 0)
                exps[std::to_string(g)] = t.monomial.exponent(g);
        }
        terms.push_back({{"coef", to_string(t.coefficient)}, {"exps", exps}});
    }
    return terms;
}

RationalPolynomial polynomial_from_json(const Json& j, Basis basis)
{
    if (!j.is_array())
        throw ParseError("polynomial must be a JSON array");
    std::vector<RationalPolynomial::Term> terms;
    for (const auto& t : j) {
        Monomial m;
        for (const auto& [key, e] : t.at("exps").items()) {
            const int g = std::stoi(key);
            if (g < 1 || g > Monomial::kMaxGenerators)
                throw ParseError("generator index out of range: " + key);
            m.set_exponent(g, e.get<unsigned>());
        }
        terms.push_back({m, parse_rational(t.at("coef").get<std::string>())});
    }
    return RationalPolynomial::from_terms(std::move(terms), basis);
}

template <class S>
Json series_to_json(const TruncatedSeries<S>& s, int truncation)
{
    Json j;
    j["prime"] = s.prime();
    j["truncation"] = truncation;
    j["validity"] = s.validity();
    j["basis"] = std::string(1, basis_letter(s.basis()));
    if (s.x_cap() != TruncatedSeries<S>::kUnbounded)
        j["x_cap"] = s.x_cap();
    if (s.weight())
        j["weight"] = *s.weight();
    Json terms = Json::array();
    s.for_each_nonzero([&](int i, int k, const GradedPolynomial<S>& c) {
        terms.push_back({{"xi", i}, {"x", k}, {"poly", polynomial_to_json(c)}});
    });
    j["terms"] = terms;
    return j;
}

RationalSeries series_from_json(const Json& j)
{
    try {
        const auto basis_text = j.at("basis").get<std::string>();
        if (basis_text != "v" && basis_text != "l")
            throw ParseError("basis must be \"v\" or \"l\"");
        const Basis basis = basis_text == "v" ? Basis::V : Basis::L;
        const int x_cap = j.contains("x_cap") ? j["x_cap"].get<int>() : RationalSeries::kUnbounded;
        RationalSeries out(j.at("prime").get<int>(), basis, j.at("validity").get<int>(), x_cap);
        if (j.contains("weight"))
            out.declare_weight(j["weight"].get<long long>());
        for (const auto& t : j.at("terms")) {
            const int i = t.at("xi").get<int>();
            const int k = t.at("x").get<int>();
            if (!out.known(i, k))
                throw ParseError("term beyond the stated validity");
            out.set_coefficient(i, k, out.coefficient(i, k) + polynomial_from_json(t.at("poly"), basis));
        }
        return out;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed series JSON: ") + e.what());
    }
}

template std::string render_polynomial(const GradedPolynomial<Integer>&);
template std::string render_polynomial(const GradedPolynomial<Rational>&);
template std::string render_series(const TruncatedSeries<Integer>&);
template std::string render_series(const TruncatedSeries<Rational>&);
template Json polynomial_to_json(const GradedPolynomial<Integer>&);
template Json polynomial_to_json(const GradedPolynomial<Rational>&);
template Json series_to_json(const TruncatedSeries<Integer>&, int);
template Json series_to_json(const TruncatedSeries<Rational>&, int);

} // namespace bpcalc
