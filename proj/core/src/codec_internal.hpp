#pragma once

#include "odc/codec.hpp"

namespace odc::detail {

const Codec& lz_codec();
const Codec& bwt_codec();

} // namespace odc::detail
