#pragma once

#include "antloop/loop_program.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace antloop {

// Deterministic, platform-independent generator state (xorshift-based).
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    uint64_t next();
    // Uniform in [lo, hi], inclusive.
    long range(long lo, long hi);
    Rational rational(long max_abs_num, long max_den);

  private:
    uint64_t state_;
};

struct GenerateParams {
    int count = 10;
    int n_min = 3, n_max = 4;
    int m_min = 2, m_max = 4;      // conditions for the G/A classes
    LoopClass cls = LoopClass::Homogeneous;
    uint64_t seed = 0;
    bool jordan_blocks = false;    // allow nontrivial Jordan blocks in the spectrum
};

// Random loop programs with guaranteed rational spectrum: A = P D P^{-1}
// with a random rational (block-)diagonal D and a random unimodular P, so
// exact analysis always succeeds. Deterministic for a fixed seed.
std::vector<LoopProgram> generate_programs(const GenerateParams& params);

// Writes programs plus a manifest.json recording seed and parameters.
void write_corpus(const std::vector<LoopProgram>& programs, const GenerateParams& params,
                  const std::string& directory);

}  // namespace antloop
