#pragma once

#include "terminal_fano/weights.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace terminal_fano::testing {

inline WeightMatrix W(const std::string& text) { return parse_text(text); }

inline StandardWeightMatrix S(const std::string& text) { return StandardWeightMatrix::from_standard(parse_text(text)); }

/// Random determinant-one change of basis (a product of shears and quarter
/// turns) followed by a random column permutation.
template <class Rng>
WeightMatrix scramble(const WeightMatrix& w, Rng& rng) {
  std::int64_t u[2][2] = {{1, 0}, {0, 1}};
  std::uniform_int_distribution<int> kind(0, 2), coef(-3, 3);
  for (int step = 0; step < 4; ++step) {
    std::int64_t e[2][2];
    switch (kind(rng)) {
      case 0: e[0][0] = 1, e[0][1] = coef(rng), e[1][0] = 0, e[1][1] = 1; break;
      case 1: e[0][0] = 1, e[0][1] = 0, e[1][0] = coef(rng), e[1][1] = 1; break;
      default: e[0][0] = 0, e[0][1] = -1, e[1][0] = 1, e[1][1] = 0; break;
    }
    std::int64_t p[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) p[i][j] = e[i][0] * u[0][j] + e[i][1] * u[1][j];
    std::copy(&p[0][0], &p[0][0] + 4, &u[0][0]);
  }
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::int64_t> a, b;
  for (auto j : perm) {
    a.push_back(u[0][0] * w.a(j) + u[0][1] * w.b(j));
    b.push_back(u[1][0] * w.a(j) + u[1][1] * w.b(j));
  }
  return {std::move(a), std::move(b)};
}

/// Fresh scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("terminal-fano-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

/// Writes an executable shell script and returns its path.
inline std::filesystem::path write_script(const std::filesystem::path& dir, const std::string& name,
                                          const std::string& body) {
  auto p = dir / name;
  std::ofstream(p) << "#!/bin/sh\n" << body;
  std::filesystem::permissions(p, std::filesystem::perms::owner_all);
  return p;
}

}  // namespace terminal_fano::testing
