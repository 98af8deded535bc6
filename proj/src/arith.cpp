#include "symrank/arith.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace symrank {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational power(const Rational& base, unsigned long exponent) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    return make_rational(num, den);
}

std::string to_fraction_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

Integer parse_integer(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("bad integer literal: " + text);
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("bad integer literal: " + text);
    return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

Integer pow10(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos)
        return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));

    std::string mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        exponent = parse_integer(text.substr(e + 1)).get_si();
    }
    std::string digits = mantissa;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exponent -= static_cast<long>(mantissa.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad decimal literal: " + text);
    }
    Integer num = parse_integer(digits);
    if (exponent >= 0) return Rational(num * pow10(static_cast<unsigned long>(exponent)));
    return make_rational(num, pow10(static_cast<unsigned long>(-exponent)));
}

// ---------------------------------------------------------------------------

PrimePower::PrimePower(std::uint64_t p, int mu) : p_(p), mu_(mu) {
    if (!is_prime(p)) throw std::invalid_argument("PrimePower: " + std::to_string(p) + " is not prime");
    if (mu < 1) throw std::invalid_argument("PrimePower: exponent must be >= 1");
}

std::uint64_t PrimePower::value() const { return checked_pow(p_, static_cast<unsigned>(mu_)); }

BoundedValue::BoundedValue(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower > upper) throw std::invalid_argument("BoundedValue: lower > upper");
}

// ---------------------------------------------------------------------------

Rational pochhammer(unsigned n, const Rational& q) {
    Rational product = 1;
    Rational qj = 1;
    for (unsigned j = 1; j <= n; ++j) {
        qj *= q;
        product *= 1 - qj;
    }
    return product;
}

BoundedValue pochhammer_infinite(const Rational& q, const Rational& eps) {
    if (q <= 0 || q >= 1) throw std::invalid_argument("pochhammer_infinite: need 0 < q < 1");
    if (eps <= 0) throw std::invalid_argument("pochhammer_infinite: need eps > 0");

    const Rational one_minus_q = 1 - q;
    Rational partial = 1;  // Pi_N(q)
    Rational next = q;     // q^(N+1)
    while (next / one_minus_q > eps) {
        partial *= 1 - next;
        next *= q;
    }
    Rational tail = next / one_minus_q;
    Rational lower = tail >= 1 ? Rational(0) : Rational(partial * (1 - tail));
    return {lower, partial};
}

Rational t_beta(unsigned beta, unsigned k, unsigned s, const Rational& q) {
    if (k == 0) return 1;
    const Rational q2 = q * q;
    const Rational qb = power(q, beta);

    // ratio_j = Pi_{k+j-1}(q^2) / (Pi_j(q^2) Pi_{k-1}(q^2)), ratio_0 = 1
    Rational ratio = 1;
    Rational weight = 1;  // q^(beta j)
    Rational sum = 1;
    Rational q2_j = 1;                   // q^(2j)
    Rational q2_kj = power(q2, k - 1);   // q^(2(k+j-1))
    for (unsigned j = 1; j <= s; ++j) {
        q2_j *= q2;
        q2_kj *= q2;
        ratio *= (1 - q2_kj) / (1 - q2_j);
        weight *= qb;
        sum += weight * ratio;
    }
    return sum;
}

namespace {

// q^(2j) Pi_{2j+offset}(q) Pi_{j+s}(q^2) / (Pi_j(q^2)^2 Pi_s(q^2))
Rational alt_term(unsigned j, unsigned s, unsigned offset, const Rational& q) {
    const Rational q2 = q * q;
    const Rational pj = pochhammer(j, q2);
    return power(q2, j) * pochhammer(2 * j + offset, q) * pochhammer(j + s, q2) /
           (pj * pj * pochhammer(s, q2));
}

}  // namespace

Rational t1_alt(unsigned k, unsigned s, const Rational& q) {
    Rational sum = 0;
    for (unsigned j = 0; j < k; ++j) sum += alt_term(j, s, 0, q);
    return pochhammer(k, q * q) / pochhammer(2 * k, q) * (1 - power(q, s + 1) * sum);
}

Rational t3_alt(unsigned k, unsigned s, const Rational& q) {
    Rational sum = 0;
    for (unsigned j = 0; j < k; ++j) sum += alt_term(j, s, 1, q);
    return pochhammer(k, q * q) / pochhammer(2 * k + 1, q) * (1 - q - power(q, 3 * s + 3) * sum);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    a %= m;
    while (e) {
        if (e & 1) result = mul_mod(result, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int legendre(std::int64_t d, std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: modulus must be an odd prime");
    const auto sp = static_cast<__int128>(p);
    const auto residue = static_cast<std::uint64_t>(((d % sp) + sp) % sp);
    if (residue == 0) return 0;
    return pow_mod(residue, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::vector<PrimePower> factorize(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("factorize: need m >= 2");
    std::vector<PrimePower> factors;
    for (std::uint64_t p = 2; p <= m / p; p += (p == 2 ? 1 : 2)) {
        int mu = 0;
        while (m % p == 0) {
            m /= p;
            ++mu;
        }
        if (mu > 0) factors.emplace_back(p, mu);
    }
    if (m > 1) factors.emplace_back(m, 1);
    return factors;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    __int128 r0 = m, r1 = a % m;
    __int128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        __int128 quotient = r0 / r1;
        __int128 r2 = r0 - quotient * r1;
        r0 = r1;
        r1 = r2;
        __int128 t2 = t0 - quotient * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("inverse_mod: not a unit");
    if (t0 < 0) t0 += m;
    return static_cast<std::uint64_t>(t0);
}

int valuation(std::uint64_t x, std::uint64_t p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (result > std::numeric_limits<std::uint64_t>::max() / p)
            throw std::overflow_error("prime power exceeds 64 bits");
        result *= p;
    }
    return result;
}

}  // namespace symrank
