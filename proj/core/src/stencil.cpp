#include "kleinfdtd/stencil.hpp"

namespace kleinfdtd::stencil {

void apply_coupling(const Grid& g, std::span<const cplx> in1, std::span<const cplx> in2,
                    std::span<cplx> out1, std::span<cplx> out2) {
  for_each_coupling(g, in1, in2, [&](std::size_t idx, cplx k1, cplx k2) {
    out1[idx] = k1;
    out2[idx] = k2;
  });
}

}  // namespace kleinfdtd::stencil
