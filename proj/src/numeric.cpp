#include "tseq/numeric.hpp"

#include <cctype>
#include <stdexcept>

namespace tseq {

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("division by zero");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int mod_floor(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("division by zero");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt of negative number");
    Int s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
}

Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Int floor_rat(const Rat& q) {
    return floor_div(q.get_num(), q.get_den());
}

Int ceil_rat(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

Rat abs_rat(const Rat& q) {
    return q < 0 ? Rat(-q) : q;
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

long floor_log2(const Rat& q) {
    if (q < 1) return -1;
    // 2^e <= q iff 2^e <= floor(q) since 2^e is an integer.
    Int f = floor_rat(q);
    return static_cast<long>(mpz_sizeinbase(f.get_mpz_t(), 2)) - 1;
}

Int parse_int(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size())
        throw std::invalid_argument("not an integer: '" + text + "'");
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("not an integer: '" + text + "' (offending character at position " + std::to_string(i) + ")");
    return Int(text);
}

Rat parse_fraction(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int(text));
    }
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den <= 0)
        throw std::invalid_argument("denominator must be a positive integer: '" + text + "'");
    return make_rat(num, den);
}

std::string fraction_str(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace tseq
