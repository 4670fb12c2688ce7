#include "wittdiv/maps.hpp"

#include "wittdiv/errors.hpp"

#include <algorithm>
#include <map>

namespace wittdiv {

namespace {

using Code = FiniteWitt::Code;
using Cochain = GradedCechComplex::Cochain;

bool is_zero(const Cochain& c) {
    return std::all_of(c.begin(), c.end(), [](Code x) { return x == 0; });
}

RDivisor minus_s(unsigned N, long long s) { return RDivisor::hyperplane(N, 0, mpq_class(static_cast<long>(-s))); }

void enumerate_tuples(unsigned slots, long long total, long long lo, std::vector<long long>& cur,
                      std::vector<std::vector<long long>>& out) {
    if (cur.size() + 1 == slots) {
        if (total <= lo) {
            cur.push_back(total);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    // the remaining slots are each <= lo
    const long long rest = static_cast<long long>(slots - cur.size() - 1);
    for (long long v = lo; v >= total - lo * rest; --v) {
        cur.push_back(v);
        enumerate_tuples(slots, total - v, lo, cur, out);
        cur.pop_back();
    }
}

unsigned rank_mod_p(std::vector<std::vector<unsigned>> rows, unsigned p) {
    unsigned rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        unsigned inv = 1;
        while (rows[rank][c] * inv % p != 1) ++inv;
        for (auto& x : rows[rank]) x = x * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            unsigned f = rows[r][c];
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

Cochain map_cochain(const Cochain& c, const std::function<Code(Code)>& f) {
    Cochain out(c.size());
    std::transform(c.begin(), c.end(), out.begin(), f);
    return out;
}

InducedMap induced_on_cohomology(const GradedCechComplex& source, const GradedCechComplex& target, int j,
                                 const std::function<Code(Code)>& f, std::uint64_t bound) {
    if (source.N() != target.N()) throw InvalidArgument("induced map between different P^N");
    InducedMap out;
    for (int i : {j - 1, j}) {
        if (i < 0 || i > static_cast<int>(source.N())) continue;
        for (const auto& g : source.generators(i)) {
            if (target.differential(i, map_cochain(g, f)) != map_cochain(source.differential(i, g), f)) {
                out.commutes = false;
                return out;
            }
        }
    }
    auto B_source = source.boundaries(j, bound);
    auto B_target = target.boundaries(j, bound);
    std::uint64_t cocycles = 0;
    std::uint64_t killed = 0;
    source.for_each(j, bound, [&](const Cochain& c) {
        if (!is_zero(source.differential(j, c))) return;
        ++cocycles;
        if (B_target.count(target.encode(j, map_cochain(c, f)))) ++killed;
    });
    auto log_p = [&](std::uint64_t v) {
        unsigned k = 0;
        for (; v > 1; v /= source.witt().p()) ++k;
        return k;
    };
    out.source_log_order = log_p(cocycles / B_source.size());
    out.kernel_log_order = log_p(killed / B_source.size());
    return out;
}

std::vector<std::vector<long long>> top_basis(unsigned N, long long s) {
    std::vector<std::vector<long long>> out;
    if (s < static_cast<long long>(N) + 1) return out;
    std::vector<long long> cur;
    enumerate_tuples(N + 1, -s, -1, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

TopFrobeniusReport frobenius_on_top_H(unsigned N, long long s, unsigned p) {
    if (s < 1) throw InvalidArgument("frobenius_on_top_H needs s >= 1");
    TopFrobeniusReport r;
    r.N = N;
    r.p = p;
    r.s = s;
    r.basis = top_basis(N, s);
    auto target = top_basis(N, static_cast<long long>(p) * s);
    r.target_dimension = target.size();
    std::vector<std::vector<unsigned>> matrix;
    for (std::size_t row = 0; row < r.basis.size(); ++row) {
        std::vector<long long> image;
        for (auto v : r.basis[row]) image.push_back(v * static_cast<long long>(p));
        auto it = std::lower_bound(target.begin(), target.end(), image);
        std::vector<unsigned> line(target.size(), 0);
        if (it == target.end() || *it != image) {
            r.images_in_target_basis = false;
        } else {
            auto col = static_cast<std::size_t>(it - target.begin());
            r.support.emplace_back(row, col);
            line[col] = 1;
        }
        r.images.push_back(std::move(image));
        matrix.push_back(std::move(line));
    }
    r.rank = rank_mod_p(matrix, p);

    auto W = std::make_shared<const FiniteWitt>(GaloisField::prime(p), 1);
    const auto D = minus_s(N, s);
    const auto pD = minus_s(N, static_cast<long long>(p) * s);
    for (const auto& v : r.basis) {
        // x^v has divisor-twisted degree e = v - floor(D).
        auto e = v;
        e[0] += s;
        auto deg = GradedDegree::make(p, 0, e);
        GradedCechComplex src(W, D, deg);
        GradedCechComplex tgt(W, pD, deg.scaled_up(1));
        auto m = induced_on_cohomology(src, tgt, static_cast<int>(N), [&](Code c) { return W->frobenius(c); });
        if (m.source_log_order != 1 || !m.injective()) r.brute_force_agrees = false;
    }
    return r;
}

WittMapReport frobenius_on_witt_top_H(unsigned N, long long s, std::shared_ptr<const GaloisField> field, unsigned n,
                                      std::uint64_t bound) {
    const unsigned p = field->characteristic();
    WittMapReport report;
    report.map = "F";
    auto W = std::make_shared<const FiniteWitt>(field, n);
    const auto D = minus_s(N, s);
    const auto pD = minus_s(N, static_cast<long long>(p) * s);
    LevelFloors fD(D, p, n), fpD(pD, p, n);
    std::map<std::pair<std::vector<unsigned>, std::vector<unsigned>>, InducedMap> memo;
    for (const auto& e : degree_window(N, p, n - 1, certified_radius(D, p, n))) {
        GradedCechComplex src(W, fD, N, e);
        if (src.group_order(static_cast<int>(N)) == 1) continue;
        GradedCechComplex tgt(W, fpD, N, e.scaled_up(1));
        auto key = std::make_pair(src.structure_key(), tgt.structure_key());
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, induced_on_cohomology(src, tgt, static_cast<int>(N),
                                                         [&](Code c) { return W->frobenius(c); }, bound))
                     .first;
        report.commutes = report.commutes && it->second.commutes;
        if (it->second.source_log_order == 0) continue;
        ++report.pieces;
        report.source_log_order += it->second.source_log_order;
        report.kernel_log_order += it->second.kernel_log_order;
    }
    return report;
}

VerschiebungReport verschiebung_on_H(unsigned N, long long s, std::shared_ptr<const GaloisField> field, unsigned n,
                                     std::uint64_t bound) {
    const unsigned p = field->characteristic();
    VerschiebungReport out;
    out.certificate = N == 0 || classical_h(N, -s)[N - 1] == 0;
    auto& report = out.brute_force;
    report.map = "V";
    auto Wn = std::make_shared<const FiniteWitt>(field, n);
    auto Wn1 = std::make_shared<const FiniteWitt>(field, n + 1);
    const auto D = minus_s(N, s);
    const auto pD = minus_s(N, static_cast<long long>(p) * s);
    LevelFloors fpD(pD, p, n), fD(D, p, n + 1);
    const Code q = field->order();
    std::map<std::pair<std::vector<unsigned>, std::vector<unsigned>>, InducedMap> memo;
    for (const auto& e : degree_window(N, p, n - 1, certified_radius(pD, p, n))) {
        GradedCechComplex src(Wn, fpD, N, e);
        if (src.group_order(static_cast<int>(N)) == 1) continue;
        GradedCechComplex tgt(Wn1, fD, N, e.scaled_down(1));
        auto key = std::make_pair(src.structure_key(), tgt.structure_key());
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, induced_on_cohomology(src, tgt, static_cast<int>(N),
                                                         [q](Code c) { return c * q; }, bound))
                     .first;
        report.commutes = report.commutes && it->second.commutes;
        if (it->second.source_log_order == 0) continue;
        ++report.pieces;
        report.source_log_order += it->second.source_log_order;
        report.kernel_log_order += it->second.kernel_log_order;
    }
    return out;
}

TorsionProbe finite_level_torsion_probe(unsigned N, long long s, std::shared_ptr<const GaloisField> field, unsigned n,
                                        std::uint64_t bound) {
    const unsigned p = field->characteristic();
    TorsionProbe probe;
    const auto D = minus_s(N, s);
    const auto pD = minus_s(N, static_cast<long long>(p) * s);
    auto total = witt_cech_H_total(static_cast<int>(N), field, D, n, std::nullopt, bound);
    probe.log_order = total.log_order;
    probe.log_torsion.assign(n, 0);
    for (const auto& [e, piece] : total.pieces)
        for (unsigned k = 0; k < n; ++k) probe.log_torsion[k] += piece.log_torsion[k];
    long long pm = 1;
    for (unsigned m = 0; m < n; ++m, pm *= p)
        probe.expected_log_order += static_cast<unsigned>(classical_h(N, -pm * s)[N] * field->degree());
    probe.frobenius_injective = frobenius_on_witt_top_H(N, s, field, n, bound).injective();
    probe.verschiebung_injective = verschiebung_on_H(N, s, field, n, bound).injective();

    // F V = V F = p, with the fixed-length V, on every class of H^N(W_n O(-sH))
    // and of H^N(W_n O(-psH)).
    auto W = std::make_shared<const FiniteWitt>(field, n);
    LevelFloors fD(D, p, n), fpD(pD, p, n);
    const int top = static_cast<int>(N);
    bool ok = true;
    auto check = [&](const GradedCechComplex& here, const std::function<Code(Code)>& go,
                     const std::function<Code(Code)>& back) {
        auto B = here.boundaries(top, bound);
        here.for_each(top, bound, [&](const Cochain& c) {
            if (!ok || !is_zero(here.differential(top, c))) return;
            auto round = map_cochain(map_cochain(c, go), back);
            auto pc = here.times_p(c);
            Cochain diff(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) diff[i] = W->sub(round[i], pc[i]);
            if (!B.count(here.encode(top, diff))) ok = false;
        });
    };
    auto F = [&](Code c) { return W->frobenius(c); };
    auto V = [&](Code c) { return W->verschiebung(c); };
    for (const auto& [e, piece] : total.pieces) check(GradedCechComplex(W, fD, N, e), F, V);
    auto upper = witt_cech_H_total(top, field, pD, n, std::nullopt, bound);
    for (const auto& [e, piece] : upper.pieces) check(GradedCechComplex(W, fpD, N, e), V, F);
    probe.fv_equals_p = ok;
    return probe;
}

}  // namespace wittdiv
