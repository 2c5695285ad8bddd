// Copyright 2026 The qheat Authors
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

#include "qheat/witnesses.hpp"

#include <cmath>

#include "qheat/errors.hpp"
#include "qheat/format.hpp"

namespace qheat {

namespace {

void add_detail(WitnessVerdict& v, const std::string& s) {
  if (!v.detail.empty()) v.detail += "; ";
  v.detail += s;
}

// Upper bound on Q when dbeta > 0, lower bound when dbeta < 0.
bool breaks_directed_bound(double q, double bound, double dbeta) {
  return dbeta > 0 ? q > bound + kViolationMargin : q < bound - kViolationMargin;
}

double require_dbeta(double beta_cold, double beta_hot) {
  const double dbeta = beta_cold - beta_hot;
  if (dbeta == 0.0) throw PreconditionViolated("equal inverse temperatures leave the bound undefined");
  return dbeta;
}

}  // namespace

WitnessVerdict inequality_t1(double q, double q_tpm, double beta_cold, double beta_hot,
                             double gap) {
  require_dbeta(beta_cold, beta_hot);
  const double ec = std::exp(beta_cold * gap);
  const double eh = std::exp(beta_hot * gap);
  WitnessVerdict v;
  v.id = "T1";
  v.bound = (2 + eh + ec) / std::abs(ec - eh) * std::abs(q_tpm);
  v.observed = std::abs(q);
  v.violated = v.observed > v.bound + kViolationMargin;
  return v;
}

WitnessVerdict inequality_t2(double q, double q_tpm, double beta_cold, double beta_hot,
                             double gap_cold, double gap_hot, double epsilon) {
  WitnessVerdict v;
  v.id = "T2";
  v.observed = std::abs(q);
  const double r = (1 + std::exp(beta_hot * gap_hot)) / (1 + std::exp(beta_cold * gap_cold));
  const double e_bar = 0.5 * (gap_cold + gap_hot);
  const double delta = std::abs(gap_cold - gap_hot) / (2 * e_bar);
  const double spread = delta * (1 + r);
  const double denom = 1 - r - spread;

  if (!(r < 1)) add_detail(v, "R = " + format_double(r) + " is not below 1");
  else if (!(delta < (1 - r) / (1 + r)))
    add_detail(v, "detuning " + format_double(delta) + " not below (1-R)/(1+R)");
  if (!(std::abs(q) > 2 * epsilon * e_bar))
    add_detail(v, "|Q| does not exceed 2 epsilon E_bar");
  v.preconditions_ok = v.detail.empty();

  if (denom <= 0) {
    v.bound = std::nan("");
    return v;
  }
  const double offset = 4 * e_bar * epsilon;
  v.bound = (1 + r + spread) / denom * std::abs(q_tpm) + offset * (2 + spread) / denom;
  const double direct = (1 + r - spread) / denom * q_tpm - offset * (2 + spread) / denom;
  const double back = -(1 + r + spread) / denom * q_tpm + offset * (2 - r + spread) / denom;
  SecondaryBound lower{"direct", direct, q < 0 && q < direct - kViolationMargin};
  SecondaryBound upper{"back", back, q > 0 && q > back + kViolationMargin};
  v.secondary = {lower, upper};
  if (v.preconditions_ok) {
    v.violated = v.observed > v.bound + kViolationMargin || lower.violated || upper.violated;
  }
  return v;
}

WitnessVerdict inequality_t3(double q, const XftReport& xft, double beta_cold, double beta_hot,
                             std::optional<double> epsilon_work) {
  const double dbeta = require_dbeta(beta_cold, beta_hot);
  if (!(1 + xft.chi_bar > 0)) {
    throw DivergentQuantity("1 + chi_bar = " + format_double(1 + xft.chi_bar) +
                            " has no logarithm");
  }
  WitnessVerdict v;
  v.id = epsilon_work ? "T3-nonideal" : "T3";
  double numerator = std::log1p(xft.chi_bar) - xft.avg_delta_i;
  if (epsilon_work) numerator += std::abs(beta_hot) * *epsilon_work;
  v.bound = numerator / dbeta;
  v.observed = q;
  v.violated = breaks_directed_bound(q, v.bound, dbeta);
  if (!xft.resonance_ok && !epsilon_work) {
    v.preconditions_ok = false;
    v.violated = false;
    add_detail(v, "transitions off resonance");
  }
  return v;
}

WitnessVerdict inequality_i4(double q, double j, double beta_cold, double beta_hot) {
  const double dbeta = require_dbeta(beta_cold, beta_hot);
  if (!(1 + j > 0)) throw DivergentQuantity("1 + J = " + format_double(1 + j) + " has no logarithm");
  WitnessVerdict v;
  v.id = "I4";
  v.bound = std::log1p(j) / dbeta;
  v.observed = q;
  v.violated = breaks_directed_bound(q, v.bound, dbeta);
  return v;
}

T4Verdicts inequality_t4(double q, const TransitionTable& tpm) {
  if (!tpm.cold().nondegenerate_bohr() || !tpm.hot().nondegenerate_bohr()) {
    throw DegenerateSpectrum("two-sided bound needs a nondegenerate Bohr spectrum");
  }
  const int d = tpm.dims().joint();
  double lambda_minus = 0, lambda_plus = 0;
  for (int i = 0; i < d; ++i) {
    for (int f = 0; f < d; ++f) {
      const double de = tpm.delta_e_cold(i, f);
      if (de < 0) lambda_minus -= tpm.at(i, f) * de;
      else if (de > 0) lambda_plus += tpm.at(i, f) * de;
    }
  }
  const double q_tpm = heat_from_table(tpm);
  T4Verdicts out;
  out.lower.id = "T4-lower";
  out.lower.bound = q_tpm - 2 * lambda_minus;
  out.lower.observed = q;
  out.lower.violated = q < out.lower.bound - kViolationMargin;
  out.upper.id = "T4-upper";
  out.upper.bound = q_tpm + 2 * lambda_plus;
  out.upper.observed = q;
  out.upper.violated = q > out.upper.bound + kViolationMargin;
  return out;
}

WitnessVerdict strong_backflow(double q, double beta_cold, double beta_hot, int d) {
  WitnessVerdict v;
  v.id = "strong-backflow";
  v.observed = q;
  const double dbeta = beta_cold - beta_hot;
  if (!(dbeta > 0)) {
    v.preconditions_ok = false;
    v.bound = std::nan("");
    add_detail(v, "needs beta_C > beta_H");
    return v;
  }
  v.bound = std::log(static_cast<double>(d)) / dbeta;
  v.violated = q > v.bound + kViolationMargin;
  return v;
}

}  // namespace qheat
