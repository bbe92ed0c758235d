#pragma once

#include "stc/design.hpp"
#include "stc/rng.hpp"

#include <cstdint>

namespace stc {

struct ChannelRealization {
  MatC H;                 // n_r x n_t, entries i.i.d. N_c(0,1)
  std::uint64_t seed_tag = 0;  // PRNG substream that produced it
};

struct EffectiveChannel {
  MatR matrix;            // (H' kron I_T) R, 2*n_r*T x 2K
  bool rank_deficient = false;
  int n_t = 0;
  int T = 0;
};

// PAM ring Z_sqrt(M) = {0, 1, ..., sqrt(M)-1} per real dimension.
struct Constellation {
  int M = 0;
  int ring_size = 0;      // sqrt(M)
  double offset = 0.0;    // (sqrt(M)-1)/2, centering shift
  double energy = 0.0;    // Ebar: mean of (v - offset)^2 over the ring
};

// M must be an even power of 2 (so sqrt(M) is a power of 2).
Constellation make_constellation(int M);

// Scalar applied to centered symbols so that the mean entry energy
// E[|X_{i,t}|^2] equals 1. Computed exactly from the weight matrices:
// E[|X_{i,t}|^2] = Ebar * sum_k |D_k(i,t)|^2 for i.i.d. centered symbols,
// averaged over entries. For all four builtin designs every entry carries
// exactly one real symbol pair, giving 1/sqrt(2*Ebar).
double transmit_scale(const LinearDesign& design, const Constellation& c);

// Per-real-component average energy of the transmitted (centered, scaled)
// symbols; this is the Ebar the equalizers see.
inline double effective_symbol_energy(const Constellation& c, double scale) {
  return scale * scale * c.energy;
}

ChannelRealization sample_channel(int n_r, int n_t, CounterRng& rng);

// H' = [Re(H) -Im(H); Im(H) Re(H)]
MatR embed_real(const MatC& H);

// (H' kron I_T) R; flags (does not reject) column-rank deficiency.
EffectiveChannel effective_channel(const MatC& H, const CodeMatrix& R, int n_t,
                                   int T);

// y = Heff * scale * (s - offset*1) + sqrt(n_t/P) * z, with z the real
// embedding of complex N_c(0,1) noise (variance 1/2 per real component).
// s must be a ring vector; P is linear SNR. noiseless suppresses z.
VecR transmit(const EffectiveChannel& Heff, const Constellation& c,
              double scale, const VecR& s, double P, CounterRng& rng,
              bool noiseless = false);

}  // namespace stc
