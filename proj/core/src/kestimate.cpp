#include "odc/kestimate.hpp"

namespace odc {

ComplexityEstimate k_estimate(const Bytes& data) {
    ComplexityEstimate est;
    est.original_bits = std::uint64_t(data.size()) * 8;
    bool first = true;
    for (CodecId id : codec_list()) {
        std::uint64_t bits = std::uint64_t(compress(data, id).size()) * 8;
        est.per_codec.emplace_back(id, bits);
        if (first || bits < est.best_bits) {  // ties keep the earlier codec
            est.best_codec = id;
            est.best_bits = bits;
            first = false;
        }
    }
    est.ratio = est.original_bits ? double(est.best_bits) / double(est.original_bits) : 0.0;
    return est;
}

double k_rate(const ComplexityEstimate& est) {
    std::uint64_t n = est.original_bits / 8;
    return n ? double(est.best_bits) / double(n) : 0.0;
}

} // namespace odc
