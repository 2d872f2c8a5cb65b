// SPDX-License-Identifier: MIT
#pragma once

#include "taut/sampled_path.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace taut {

enum class TruncationKind { TV, UTV, DTV };

const char* to_string(TruncationKind kind);

struct TruncationReport {
    double value = 0.0;
    double r = 0.0;
    TruncationKind kind = TruncationKind::TV;
    /// Filled by the oracle only: one optimizing increasing subsequence.
    std::vector<std::size_t> optimal_indices;
};

/// Truncated variation: sup over increasing index subsequences of
/// sum (|x_{i_{k+1}} - x_{i_k}| - r)^+. One pass, O(n).
/// r = 0 gives the classical total variation. Throws for r < 0.
TruncationReport tv_trunc(const SampledPath& path, double r);

/// Upward variant: positive increments only, sum (dx - r)^+.
TruncationReport utv_trunc(const SampledPath& path, double r);

/// Downward variant: DTV^r(f) = UTV^r(-f); implemented by negation.
TruncationReport dtv_trunc(const SampledPath& path, double r);

/// Exact O(n^2) dynamic program over all increasing subsequences.
/// Cross-validates the one-pass algorithms and returns one optimizing
/// subsequence. Throws std::length_error for n > 4096.
TruncationReport tv_trunc_oracle(const SampledPath& path, double r,
                                 TruncationKind kind);

/// One CSV row: kind,r,value,n,T.
void write_csv_row(const TruncationReport& report, const SampledPath& path,
                   std::ostream& out);

} // namespace taut
