#include "wittdiv/finite_witt.hpp"

namespace wittdiv {

namespace {

constexpr std::uint64_t kMaxTable = 1u << 22;
constexpr std::uint64_t kMaxSize = 1u << 31;

}  // namespace

FiniteWitt::FiniteWitt(std::shared_ptr<const GaloisField> field, unsigned length)
    : field_(std::move(field)), n_(length), size_(1), ring_(field_, length) {
    for (unsigned i = 0; i < n_; ++i) {
        size_ *= field_->order();
        if (size_ > kMaxSize) throw InvalidArgument("W_n(F_q) too large to encode");
    }
    neg_table_.resize(size_);
    for (Code a = 0; a < size_; ++a) neg_table_[a] = encode(ring_.neg(decode(a)));
    if (size_ * size_ <= kMaxTable) {
        add_table_.resize(size_ * size_);
        std::vector<WittVector<FieldElem>> decoded(size_);
        for (Code a = 0; a < size_; ++a) decoded[a] = decode(a);
        for (Code a = 0; a < size_; ++a)
            for (Code b = a; b < size_; ++b) {
                Code s = encode(ring_.add(decoded[a], decoded[b]));
                add_table_[a * size_ + b] = s;
                add_table_[b * size_ + a] = s;
            }
    }
}

FiniteWitt::Code FiniteWitt::encode(const WittVector<FieldElem>& a) const {
    if (a.components.size() != n_) throw LengthMismatch("wrong Witt length for encoding");
    Code c = 0;
    for (unsigned m = n_; m-- > 0;) c = c * q() + a.components[m].v;
    return c;
}

WittVector<FieldElem> FiniteWitt::decode(Code c) const {
    WittVector<FieldElem> r{p(), std::vector<FieldElem>(n_)};
    for (unsigned m = 0; m < n_; ++m) {
        r.components[m] = {c % q()};
        c /= q();
    }
    return r;
}

FieldElem FiniteWitt::component(Code c, unsigned m) const {
    for (unsigned i = 0; i < m; ++i) c /= q();
    return {c % q()};
}

FiniteWitt::Code FiniteWitt::with_component(Code c, unsigned m, FieldElem value) const {
    Code scale = 1;
    for (unsigned i = 0; i < m; ++i) scale *= q();
    Code old = (c / scale) % q();
    return c - old * scale + value.v * scale;
}

FiniteWitt::Code FiniteWitt::add(Code a, Code b) const {
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
    return encode(ring_.add(decode(a), decode(b)));
}

FiniteWitt::Code FiniteWitt::neg(Code a) const { return neg_table_[a]; }

FiniteWitt::Code FiniteWitt::add_multiple(Code a, std::uint64_t k) const {
    Code r = 0;
    while (k > 0) {
        if (k & 1u) r = add(r, a);
        k >>= 1;
        if (k > 0) a = add(a, a);
    }
    return r;
}

FiniteWitt::Code FiniteWitt::frobenius(Code a) const {
    Code r = 0;
    for (unsigned m = n_; m-- > 0;) r = r * q() + field_->frobenius(component(a, m)).v;
    return r;
}

FiniteWitt::Code FiniteWitt::verschiebung(Code a, unsigned m) const {
    if (m >= n_) return 0;
    Code scale = 1;
    for (unsigned i = 0; i < m; ++i) scale *= q();
    return (a % static_cast<Code>(size_ / scale)) * scale;
}

FiniteWitt::Code FiniteWitt::teichmuller_scale(FieldElem b, Code a) const {
    Code r = 0;
    Code scale = 1;
    FieldElem bp = b;
    for (unsigned m = 0; m < n_; ++m) {
        r += field_->mul(bp, component(a, m)).v * scale;
        scale *= q();
        bp = field_->frobenius(bp);
    }
    return r;
}

unsigned FiniteWitt::valuation(Code a) const {
    for (unsigned m = 0; m < n_; ++m) {
        if (a % q() != 0) return m;
        a /= q();
    }
    return n_;
}

}  // namespace wittdiv
