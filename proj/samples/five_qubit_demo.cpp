// Builds the ((5,6,2)) and ((5,2,3)) codes, certifies them symbolically and
// with exact projectors, and prints what was checked.

#include <cstdio>

#include "qecc_forge/qecc_forge.hpp"

using namespace qforge;

int main() {
  for (auto fam : {Family::rains_5_6_2, Family::laflamme_5_2_3}) {
    const auto code = make({fam});
    const auto cert = certify(code);
    if (!cert) {
      std::printf("%s: verify failed\n", code.name.c_str());
      return 1;
    }
    const auto p = build_projector(code);
    const auto o = distance_oracle(p, code.k, code.d - 1);
    std::printf("%s: ((%u,%llu,%u)), %zu errors checked, trace %s, oracle %s\n", code.name.c_str(), code.k,
                static_cast<unsigned long long>(cert->M), code.d, cert->transcript.size(),
                p.trace().to_string().c_str(), o.passed ? "ok" : "FAILED");
    for (const auto& s : cert->stabilizers) std::printf("  stabilizer %s\n", s.c_str());
    std::printf("%s", matrix_to_text(code.A).c_str());
    if (!o.passed) return 1;
  }
  return 0;
}
