// pdcone - primal-dual coordinate methods for cone-constrained composite optimization
// Copyright 2026 pdcone Contributors
// Licensed under Apache 2.0

#pragma once

#include <numeric>
#include <vector>

#include "pdcone/types.hpp"

namespace pdcone {

/// Partition of R^n into N contiguous blocks of sizes n_1, ..., n_N.
struct BlockStructure {
  std::vector<int> block_sizes;
  std::vector<int> offsets;  // prefix sums, offsets[0] == 0
  int n = 0;
  int N = 0;

  static BlockStructure from_sizes(std::vector<int> sizes) {
    require(!sizes.empty(), "BlockStructure: needs at least one block");
    BlockStructure bs;
    bs.block_sizes = std::move(sizes);
    bs.N = static_cast<int>(bs.block_sizes.size());
    bs.offsets.resize(bs.N);
    int off = 0;
    for (int i = 0; i < bs.N; ++i) {
      require(bs.block_sizes[i] >= 1, "BlockStructure: block sizes must be positive");
      bs.offsets[i] = off;
      off += bs.block_sizes[i];
    }
    bs.n = off;
    return bs;
  }

  /// Split n into N equal blocks; n must be divisible by N.
  static BlockStructure uniform(int n, int N) {
    require(N >= 1 && n >= 1 && n % N == 0,
            "BlockStructure::uniform: n must be divisible by N");
    return from_sizes(std::vector<int>(N, n / N));
  }

  int offset(int i) const { return offsets[i]; }
  int size(int i) const { return block_sizes[i]; }

  Eigen::VectorBlock<const VectorXd> segment(const VectorXd& u, int i) const {
    return u.segment(offsets[i], block_sizes[i]);
  }
  Eigen::VectorBlock<VectorXd> segment(VectorXd& u, int i) const {
    return u.segment(offsets[i], block_sizes[i]);
  }

  bool operator==(const BlockStructure& other) const {
    return block_sizes == other.block_sizes;
  }
};

}  // namespace pdcone
