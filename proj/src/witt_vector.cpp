#include "wittdiv/witt_vector.hpp"

#include <map>

namespace wittdiv {

CompiledPoly compile_mod_p(const UniversalPoly& poly, unsigned p) {
    CompiledPoly out;
    out.arity = poly.arity();
    std::map<unsigned, std::size_t> slot;
    const mpz_class modulus(p);
    for (const auto& term : poly.terms()) {
        mpz_class r = term.coefficient % modulus;
        if (r < 0) r += modulus;
        if (r == 0) continue;
        const auto c = static_cast<unsigned>(r.get_ui());
        auto [it, inserted] = slot.try_emplace(c, out.groups.size());
        if (inserted) out.groups.push_back({c, {}});
        CompiledPoly::Monomial mono;
        for (std::size_t v = 0; v < term.exponents.size(); ++v)
            if (term.exponents[v] != 0)
                mono.push_back({static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(term.exponents[v])});
        out.groups[it->second].monomials.push_back(std::move(mono));
    }
    return out;
}

std::shared_ptr<const std::vector<CompiledPoly>> compiled_witt_polys(WittFamily family, unsigned p, unsigned n) {
    static std::mutex mutex;
    static std::map<std::pair<char, unsigned>, std::shared_ptr<const std::vector<CompiledPoly>>> entries;
    const auto key = std::make_pair(family_tag(family), p);
    {
        std::lock_guard lock(mutex);
        auto it = entries.find(key);
        if (it != entries.end() && it->second->size() > n) return it->second;
    }
    auto polys = PolynomialCache::global().get(family, p, n);
    auto compiled = std::make_shared<std::vector<CompiledPoly>>();
    for (const auto& poly : *polys) compiled->push_back(compile_mod_p(poly, p));
    std::lock_guard lock(mutex);
    auto& slot = entries[key];
    if (!slot || slot->size() < compiled->size()) slot = compiled;
    return slot;
}

}  // namespace wittdiv
