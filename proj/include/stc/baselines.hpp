#pragma once

#include "stc/channel.hpp"

namespace stc {

// Per-component rounding of pinv(Heff)*y after centering/scale reversal,
// clamped to the ring.
VecR decode_zf(const VecR& y, const EffectiveChannel& Heff,
               const Constellation& c, double scale);

// Same with the regularized (MMSE) filter H^T (n_t/(2 P Ebar) I + H H^T)^-1.
VecR decode_mmse(const VecR& y, const EffectiveChannel& Heff, double P,
                 double Ebar, const Constellation& c, double scale);

// Exhaustive ML over all ring vectors; guarded to M^K <= 65536 hypotheses.
// Ties broken lexicographically.
VecR decode_ml(const VecR& y, const EffectiveChannel& Heff,
               const Constellation& c, double scale);

// Precomputed ML search table for repeated decoding against one channel.
struct MlTable {
  MatR codewords;   // one column per hypothesis: Heff * scale * (s - offset)
  std::vector<VecR> symbols;
};

MlTable make_ml_table(const EffectiveChannel& Heff, const Constellation& c,
                      double scale);

VecR decode_ml(const VecR& y, const MlTable& table);

}  // namespace stc
