#include "odc/entropy.hpp"

#include <array>
#include <cmath>

#include "odc/errors.hpp"

namespace odc {

void SymbolModel::validate() const {
    if (probs.empty()) throw error("symbol model is empty");
    double sum = 0;
    for (auto& [sym, p] : probs) {
        if (!(p > 0)) throw error("symbol model has non-positive probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw error("symbol model probabilities do not sum to 1");
}

SymbolModel symbol_frequencies(const Bytes& data) {
    if (data.empty()) throw error("cannot model an empty object");
    std::array<std::uint64_t, 256> counts{};
    for (auto b : data) ++counts[b];
    SymbolModel model;
    const double n = static_cast<double>(data.size());
    // std::map iteration is in symbol order, so downstream sums are
    // independent of the order symbols appear in the input.
    for (int s = 0; s < 256; ++s)
        if (counts[s]) model.probs.emplace(static_cast<std::uint8_t>(s), counts[s] / n);
    return model;
}

EntropyReport shannon_entropy(const Bytes& data) {
    return shannon_entropy(data, symbol_frequencies(data));
}

EntropyReport shannon_entropy(const Bytes& data, const SymbolModel& model) {
    if (data.empty()) throw error("cannot compute entropy of an empty object");
    model.validate();
    for (auto b : data)
        if (!model.probs.count(b))
            throw error("data contains a symbol with zero model probability");
    double h = 0;
    for (auto& [sym, p] : model.probs) h -= p * std::log2(p);
    if (h < 0) h = 0;  // guard tiny negative rounding when one symbol has p ~= 1
    EntropyReport rep;
    rep.n = data.size();
    rep.bits_per_symbol = h;
    rep.total_bits = static_cast<double>(rep.n) * h;
    return rep;
}

} // namespace odc
