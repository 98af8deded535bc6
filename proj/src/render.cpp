#include "symrank/render.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "symrank/symmat.hpp"

namespace symrank {

namespace {

Integer pow10(long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

// value * 10^shift for any integer shift
Rational scale10(const Rational& value, long shift) {
    if (shift >= 0) return value * Rational(pow10(shift));
    return value / Rational(pow10(-shift));
}

}  // namespace

std::string to_decimal(const Rational& value, int significant) {
    if (significant < 1) throw std::invalid_argument("to_decimal: need at least one significant digit");
    if (value == 0) return "0";
    if (value < 0) return "-" + to_decimal(-value, significant);

    // e = floor(log10(value)), seeded from the digit counts and then corrected
    long e = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 10));
    while (scale10(Rational(1), e) > value) --e;
    while (scale10(Rational(1), e + 1) <= value) ++e;

    const Rational scaled = scale10(value, significant - 1 - e);
    Integer digits = scaled.get_num() / scaled.get_den();
    const Rational remainder = scaled - Rational(digits);
    const Rational half(1, 2);
    if (remainder > half || (remainder == half && mpz_odd_p(digits.get_mpz_t()))) ++digits;
    if (digits == pow10(significant)) {
        digits = pow10(significant - 1);
        ++e;
    }

    const std::string d = digits.get_str();
    const long last_exponent = e - (significant - 1);
    if (last_exponent >= 0) return d + std::string(static_cast<std::size_t>(last_exponent), '0');
    if (e >= 0) return d.substr(0, static_cast<std::size_t>(e + 1)) + "." + d.substr(static_cast<std::size_t>(e + 1));
    return "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + d;
}

OutputRecord make_record(long n, std::uint64_t m, Route route) {
    OutputRecord rec;
    rec.n = n;
    rec.m = m;
    if (auto pp = as_prime_power(m)) {
        rec.p = pp->prime();
        rec.mu = pp->exponent();
    }
    ProbResult result = evaluate(n, m, route);
    rec.P = std::move(result.P);
    rec.Q = std::move(result.Q);
    rec.route = result.route;
    return rec;
}

std::string to_csv_row(const OutputRecord& r) {
    std::ostringstream out;
    out << r.n << ',' << (r.p ? std::to_string(*r.p) : "") << ',' << (r.mu ? std::to_string(*r.mu) : "") << ','
        << r.m << ',' << r.P.get_num().get_str() << ',' << r.P.get_den().get_str() << ',' << r.Q.get_num().get_str()
        << ',' << r.Q.get_den().get_str() << ',' << to_decimal(r.P) << ',' << to_decimal(r.Q);
    return out.str();
}

OutputRecord parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 10) throw std::invalid_argument("CSV row must have 10 fields: " + line);

    OutputRecord rec;
    rec.n = std::stol(fields[0]);
    if (!fields[1].empty()) rec.p = std::stoull(fields[1]);
    if (!fields[2].empty()) rec.mu = std::stol(fields[2]);
    rec.m = std::stoull(fields[3]);
    rec.P = make_rational(Integer(fields[4]), Integer(fields[5]));
    rec.Q = make_rational(Integer(fields[6]), Integer(fields[7]));
    return rec;
}

nlohmann::json to_json(const OutputRecord& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["p"] = r.p ? nlohmann::json(*r.p) : nlohmann::json(nullptr);
    j["mu"] = r.mu ? nlohmann::json(*r.mu) : nlohmann::json(nullptr);
    j["m"] = std::to_string(r.m);
    j["P_num"] = r.P.get_num().get_str();
    j["P_den"] = r.P.get_den().get_str();
    j["Q_num"] = r.Q.get_num().get_str();
    j["Q_den"] = r.Q.get_den().get_str();
    j["P_dec"] = to_decimal(r.P);
    j["Q_dec"] = to_decimal(r.Q);
    j["route"] = std::string(route_name(r.route));
    return j;
}

}  // namespace symrank
