#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wittdiv {

using Exponents = std::vector<unsigned>;

/// One term of an integer polynomial.
struct IntTerm {
    mpz_class coefficient;
    Exponents exponents;
};

/// Exact multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
///
/// Exponent vectors are packed into a 128-bit key (8 bits per variable),
/// which bounds the arity at 16 and every exponent at 255. Operations that
/// would exceed the bound throw std::overflow_error.
class UniversalPoly {
public:
    static constexpr std::size_t kMaxArity = 16;
    static constexpr unsigned kMaxExponent = 255;

    UniversalPoly() = default;
    explicit UniversalPoly(std::size_t arity);

    static UniversalPoly variable(std::size_t arity, std::size_t index);
    static UniversalPoly constant(std::size_t arity, const mpz_class& c);

    std::size_t arity() const { return arity_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    mpz_class coefficient(const Exponents& exponents) const;
    void add_term(const mpz_class& coefficient, const Exponents& exponents);

    /// Terms in the canonical order: descending total degree, ties broken by
    /// descending lexicographic order of the exponent vector.
    std::vector<IntTerm> terms() const;

    /// Largest exponent of each variable over all terms.
    std::vector<unsigned> max_exponents() const;

    UniversalPoly& operator+=(const UniversalPoly& other);
    UniversalPoly& operator-=(const UniversalPoly& other);
    UniversalPoly operator-() const;
    friend UniversalPoly operator+(UniversalPoly a, const UniversalPoly& b) { return a += b; }
    friend UniversalPoly operator-(UniversalPoly a, const UniversalPoly& b) { return a -= b; }
    friend UniversalPoly operator*(const UniversalPoly& a, const UniversalPoly& b);

    UniversalPoly scaled(const mpz_class& factor) const;
    UniversalPoly pow(unsigned k) const;

    /// Divides every coefficient by `divisor`; throws InexactDivision when
    /// some coefficient is not a multiple.
    UniversalPoly divided_exactly(const mpz_class& divisor) const;

    /// Re-indexes variables: variable i of this polynomial becomes variable
    /// index_map[i] of a polynomial of arity `new_arity`.
    UniversalPoly remapped(std::size_t new_arity, std::span<const std::size_t> index_map) const;

    friend bool operator==(const UniversalPoly& a, const UniversalPoly& b);

private:
    using Key = unsigned __int128;
    struct KeyHash {
        std::size_t operator()(Key k) const noexcept {
            auto lo = static_cast<std::uint64_t>(k);
            auto hi = static_cast<std::uint64_t>(k >> 64);
            return static_cast<std::size_t>(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6)));
        }
    };

    static Key pack(const Exponents& e);
    Exponents unpack(Key k) const;
    void accumulate(Key k, const mpz_class& c);

    std::size_t arity_ = 0;
    std::unordered_map<Key, mpz_class, KeyHash> terms_;
};

bool is_prime(unsigned n);

/// Ghost component w_n(z_0, ..., z_n) = sum_i p^i z_i^{p^{n-i}} of the given
/// polynomials (all of the same arity).
UniversalPoly ghost(std::span<const UniversalPoly> components, unsigned p, unsigned n);

/// w_n(x_0, ..., x_n) in the variables offset, ..., offset + n of a
/// polynomial ring of the given arity.
UniversalPoly ghost_of_variables(unsigned p, unsigned n, std::size_t arity, std::size_t offset = 0);

enum class WittFamily { Sum, Negation, Product };

char family_tag(WittFamily family);

/// Arity of the n-th polynomial of a family: 2(n+1) for sum and product
/// (x_0..x_n then y_0..y_n), n+1 for negation.
std::size_t family_arity(WittFamily family, unsigned n);

/// S_0..S_n with w_m(S) = w_m(x) + w_m(y).
std::vector<UniversalPoly> sum_polys(unsigned p, unsigned n);
/// I_0..I_n with w_m(I) = -w_m(x).
std::vector<UniversalPoly> neg_polys(unsigned p, unsigned n);
/// P_0..P_n with w_m(P) = w_m(x) * w_m(y).
std::vector<UniversalPoly> prod_polys(unsigned p, unsigned n);

std::vector<UniversalPoly> witt_polys(WittFamily family, unsigned p, unsigned n);

/// Substitutes the family members into the ghost map and checks the
/// defining identity symbolically for every m <= polys.size() - 1.
bool ghost_identity_holds(WittFamily family, unsigned p, std::span<const UniversalPoly> polys);

/// True iff every monomial has weighted degree `degree` where variable i has
/// weight weights[i].
bool is_weighted_homogeneous(const UniversalPoly& poly, std::span<const std::uint64_t> weights,
                             std::uint64_t degree);

/// Weights deg x_i = deg y_i = p^i for a polynomial of arity n+1 (x only)
/// or 2(n+1) (x block then y block).
std::vector<std::uint64_t> witt_weights(unsigned p, unsigned n, std::size_t arity);

/// True iff every monomial of S has weighted degree exactly p^n.
bool homogeneity_check(const UniversalPoly& poly, unsigned p, unsigned n);

// --- canonical text format ------------------------------------------------

/// `<tag> <p> <n> : <coeff> <e0,e1,...>; <coeff> <...>` in canonical order.
std::string serialize_poly(char tag, unsigned p, unsigned n, const UniversalPoly& poly);

struct ParsedPoly {
    char tag;
    unsigned p;
    unsigned n;
    UniversalPoly poly;
};
ParsedPoly parse_poly_line(const std::string& line);

/// Computes each (family, p) list once, extends it on demand and optionally
/// persists it to a directory as one file per (family, p). Safe for
/// concurrent readers.
class PolynomialCache {
public:
    PolynomialCache() = default;
    explicit PolynomialCache(std::filesystem::path directory);

    /// The first n + 1 members of the family. Computed (or loaded) once.
    std::shared_ptr<const std::vector<UniversalPoly>> get(WittFamily family, unsigned p, unsigned n);

    const std::optional<std::filesystem::path>& directory() const { return directory_; }

    /// Process-wide cache, backed by $WITTDIV_CACHE_DIR when set.
    static PolynomialCache& global();

private:
    std::optional<std::vector<UniversalPoly>> load(WittFamily family, unsigned p) const;
    void store(WittFamily family, unsigned p, const std::vector<UniversalPoly>& polys) const;

    std::optional<std::filesystem::path> directory_;
    std::mutex mutex_;
    std::map<std::pair<char, unsigned>, std::shared_ptr<const std::vector<UniversalPoly>>> entries_;
};

}  // namespace wittdiv
