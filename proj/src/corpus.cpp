// Copyright 2026 The nlsrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corpus.hpp"

#include <cmath>
#include <random>

namespace nlsrad {

std::vector<RadialField> smooth_corpus(const GridPtr& grid, const CorpusOptions& opts) {
  require(opts.count > 0 && opts.terms > 0, ErrorCode::kInvalidArgument,
          "smooth_corpus: count and terms must be positive");
  require(opts.min_width > 0.0 && opts.min_width <= opts.max_width, ErrorCode::kInvalidArgument,
          "smooth_corpus: need 0 < min_width <= max_width");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double log_lo = std::log(opts.min_width), log_hi = std::log(opts.max_width);

  struct Term {
    cplx amp;
    double width, center;
  };
  std::vector<RadialField> out;
  out.reserve(opts.count);
  for (std::size_t i = 0; i < opts.count; ++i) {
    std::vector<Term> terms(opts.terms);
    for (int k = 0; k < opts.terms; ++k) {
      Term& t = terms[k];
      t.amp = cplx(normal(rng), normal(rng));
      // Stratified widths, so every field carries all the corpus scales.
      const double a = (k + unit(rng)) / opts.terms;
      t.width = std::exp(log_lo + (log_hi - log_lo) * a);
      t.center = 0.0;
      if (unit(rng) < 0.5 && 6.0 * t.width < opts.max_center) {
        t.center = 6.0 * t.width + (opts.max_center - 6.0 * t.width) * unit(rng);
      }
    }
    out.push_back(RadialField::from_function(grid, [&terms](double r) {
      cplx v = 0.0;
      for (const Term& t : terms) {
        const double z = (r - t.center) / t.width;
        v += t.amp * std::exp(-0.5 * z * z);
      }
      return v;
    }));
  }
  return out;
}

}  // namespace nlsrad
