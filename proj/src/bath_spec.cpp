// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinbath/bath_spec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinbath/errors.hpp"

namespace spinbath {

void BathSpec::validate() const {
  if (n < 1) throw ArgumentError("bath size must be >= 1");
  if (!(omega_larmor > 0.0) || !std::isfinite(omega_larmor))
    throw ArgumentError("omega_L must be positive and finite");
  if (static_cast<int>(gx.size()) != n || static_cast<int>(gz.size()) != n)
    throw ArgumentError("gx and gz must have one entry per bath spin");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(gx.begin(), gx.end(), finite) || !std::all_of(gz.begin(), gz.end(), finite))
    throw ArgumentError("couplings must be finite");
  if (j) {
    if (static_cast<int>(j->size()) != n - 1)
      throw ArgumentError("chain couplings must have n-1 entries");
    if (!std::all_of(j->begin(), j->end(), finite))
      throw ArgumentError("chain couplings must be finite");
  }
  if (!sign_flipped.empty() && static_cast<int>(sign_flipped.size()) != n)
    throw ArgumentError("sign_flipped must be empty or have n entries");
}

BathSpec BathSpec::canonicalized() const {
  validate();
  BathSpec out = *this;
  out.sign_flipped.assign(n, false);
  for (int k = 0; k < n; ++k) {
    if (gx[k] < 0.0) {
      out.gx[k] = -gx[k];
      out.sign_flipped[k] = true;
    }
  }
  if (out.j) {
    for (int b = 0; b + 1 < n; ++b) {
      if (out.sign_flipped[b] != out.sign_flipped[b + 1]) (*out.j)[b] = -(*out.j)[b];
    }
  }
  // Preserve earlier flips so canonicalized() is idempotent in its record.
  if (!sign_flipped.empty()) {
    for (int k = 0; k < n; ++k) out.sign_flipped[k] = out.sign_flipped[k] != sign_flipped[k];
  }
  return out;
}

bool BathSpec::weak_coupling() const {
  double worst = 0.0;
  for (int k = 0; k < n; ++k) worst = std::max(worst, std::hypot(gx[k], gz[k]));
  return worst / omega_larmor <= 1e-2;
}

std::string BathSpec::describe() const {
  std::ostringstream os;
  os.precision(12);
  auto list = [&os](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
  };
  os << "n=" << n << " omega_L=" << omega_larmor << " gx=";
  list(gx);
  os << " gz=";
  list(gz);
  if (j) {
    os << " j=";
    list(*j);
  }
  return os.str();
}

BathSpec make_uniform_spec(int n, double g, double omega_larmor) {
  BathSpec spec;
  spec.n = n;
  spec.omega_larmor = omega_larmor;
  spec.gx.assign(n, g);
  spec.gz.assign(n, 0.0);
  spec.validate();
  return spec;
}

}  // namespace spinbath
