#pragma once

#include "wittdiv/galois_field.hpp"
#include "wittdiv/witt_vector.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace wittdiv {

/// W_n(F_q) with elements packed as integers: the code of (c_0, ..., c_{n-1})
/// is sum_m c_m q^m. Addition and negation are tabulated when q^{2n} is
/// small and otherwise evaluated through the universal polynomials.
class FiniteWitt {
public:
    using Code = std::uint32_t;

    FiniteWitt(std::shared_ptr<const GaloisField> field, unsigned length);

    const GaloisField& field() const { return *field_; }
    const std::shared_ptr<const GaloisField>& field_ptr() const { return field_; }
    const WittRing<GaloisField>& ring() const { return ring_; }
    unsigned p() const { return field_->characteristic(); }
    unsigned length() const { return n_; }
    std::uint32_t q() const { return field_->order(); }
    /// q^n.
    std::uint64_t size() const { return size_; }

    Code encode(const WittVector<FieldElem>& a) const;
    WittVector<FieldElem> decode(Code c) const;
    FieldElem component(Code c, unsigned m) const;
    /// The code with the given component replaced.
    Code with_component(Code c, unsigned m, FieldElem value) const;

    Code zero() const { return 0; }
    Code add(Code a, Code b) const;
    Code neg(Code a) const;
    Code sub(Code a, Code b) const { return add(a, neg(b)); }
    Code times_p(Code a) const { return add_multiple(a, p()); }
    Code add_multiple(Code a, std::uint64_t k) const;
    Code frobenius(Code a) const;
    /// Fixed-length V^m.
    Code verschiebung(Code a, unsigned m = 1) const;
    /// [b] * a = (b a_0, b^p a_1, b^{p^2} a_2, ...).
    Code teichmuller_scale(FieldElem b, Code a) const;
    Code teichmuller(FieldElem b) const { return b.v; }

    /// Smallest level carrying a nonzero component, or n for 0.
    unsigned valuation(Code a) const;

private:
    std::shared_ptr<const GaloisField> field_;
    unsigned n_;
    std::uint64_t size_;
    WittRing<GaloisField> ring_;
    std::vector<Code> add_table_;
    std::vector<Code> neg_table_;
};

}  // namespace wittdiv
