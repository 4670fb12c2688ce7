#include "wittdiv/divisor.hpp"

#include "wittdiv/errors.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace wittdiv {

long long floor_of(const mpq_class& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (!f.fits_slong_p()) throw InvalidArgument("divisor coefficient too large");
    return f.get_si();
}

RDivisor::RDivisor(unsigned N, std::vector<mpq_class> coefficients) : N_(N), a_(std::move(coefficients)) {
    if (a_.size() != N_ + 1) throw InvalidArgument("divisor on P^N needs N+1 coefficients");
    for (auto& c : a_) c.canonicalize();
}

RDivisor RDivisor::zero(unsigned N) { return RDivisor(N, std::vector<mpq_class>(N + 1, 0)); }

RDivisor RDivisor::hyperplane(unsigned N, unsigned j, const mpq_class& c) {
    if (j > N) throw InvalidArgument("hyperplane index above N");
    auto D = zero(N);
    D.a_[j] = c;
    return D;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, unsigned N) : s_(text), N_(N) {}

    RDivisor run() {
        std::vector<mpq_class> a(N_ + 1, 0);
        skip();
        if (peek() == 'D') {
            ++i_;
            skip();
            expect('=');
        }
        skip();
        if (at_end()) fail("empty divisor");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            skip();
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++i_;
                skip();
            } else if (!first) {
                fail("expected + or -");
            }
            first = false;
            mpq_class c = 1;
            bool have_number = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                c = number();
                have_number = true;
                skip();
                if (peek() == '/') {
                    ++i_;
                    skip();
                    mpz_class den = integer();
                    if (den == 0) fail("zero denominator");
                    c /= den;
                    skip();
                }
                if (peek() == '*') {
                    ++i_;
                    skip();
                }
            }
            if (peek() == 'H') {
                ++i_;
                mpz_class idx = integer();
                if (idx > N_) fail("hyperplane index above N");
                a[idx.get_ui()] += sign * c;
            } else if (have_number && c == 0) {
                // the zero divisor
            } else {
                fail("expected H<index>");
            }
            skip();
        }
        return RDivisor(N_, std::move(a));
    }

private:
    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[i_]; }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }
    mpz_class integer() {
        std::size_t start = i_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected a number");
        return mpz_class(s_.substr(start, i_ - start));
    }
    mpq_class number() { return mpq_class(integer()); }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at position " + std::to_string(i_) + " in '" + s_ + "'");
    }

    const std::string& s_;
    unsigned N_;
    std::size_t i_ = 0;
};

}  // namespace

RDivisor RDivisor::parse(const std::string& text, unsigned N) { return Parser(text, N).run(); }

RDivisor RDivisor::operator+(const RDivisor& other) const {
    if (other.N_ != N_) throw InvalidArgument("divisors on different P^N");
    auto r = *this;
    for (unsigned j = 0; j <= N_; ++j) r.a_[j] += other.a_[j];
    return r;
}

RDivisor RDivisor::operator-(const RDivisor& other) const { return *this + other.scaled(-1); }

RDivisor RDivisor::scaled(const mpq_class& factor) const {
    auto r = *this;
    for (auto& c : r.a_) c *= factor;
    return r;
}

std::vector<long long> RDivisor::floor() const {
    std::vector<long long> out;
    for (const auto& c : a_) out.push_back(floor_of(c));
    return out;
}

RDivisor RDivisor::fractional() const {
    auto r = *this;
    for (auto& c : r.a_) c -= static_cast<long>(floor_of(c));
    return r;
}

std::vector<long long> RDivisor::floor_scaled(unsigned p, unsigned m) const {
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
    return scaled(mpq_class(pm)).floor();
}

bool RDivisor::is_integral() const {
    for (const auto& c : a_)
        if (c.get_den() != 1) return false;
    return true;
}

mpq_class RDivisor::degree() const { return std::accumulate(a_.begin(), a_.end(), mpq_class(0)); }

bool RDivisor::leq(const RDivisor& other) const {
    if (other.N_ != N_) throw InvalidArgument("divisors on different P^N");
    for (unsigned j = 0; j <= N_; ++j)
        if (a_[j] > other.a_[j]) return false;
    return true;
}

std::string RDivisor::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (unsigned j = 0; j <= N_; ++j) {
        if (a_[j] == 0) continue;
        mpq_class c = a_[j];
        if (any) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        os << c << "*H" << j;
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

long long floor_degree(const RDivisor& D, unsigned p, unsigned m) {
    auto b = D.floor_scaled(p, m);
    return std::accumulate(b.begin(), b.end(), 0LL);
}

}  // namespace wittdiv
