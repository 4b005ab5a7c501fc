// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

namespace spinwitness::reference {

// Published reference values for the biseparable energy minima of Heisenberg
// chains (4 significant digits). Energy comparisons use kEnergyRelTol;
// amplitude columns are informational.
inline constexpr double kEnergyRelTol = 5e-4;

struct TripartiteRow {
  int two_s;
  std::array<double, 6> amplitudes;  // a_S, S = 0..2s; -1 marks absent
  double e_bs3;
  double e12;
  double e23;
  double e0;
};

inline constexpr std::array<TripartiteRow, 5> kTripartite{{
    {1, {0.973, 0.230, -1, -1, -1, -1}, -0.8090, -0.1118, -0.6972, -1.0},
    {2, {0.858, 0.506, 0.0839, -1, -1, -1}, -2.481, -0.7583, -1.722, -3.0},
    {3, {0.749, 0.631, 0.198, 0.0269, -1, -1}, -5.162, -1.933, -3.230, -6.0},
    {4, {0.671, 0.676, 0.298, 0.0696, 0.00819, -1}, -8.849, -3.601, -5.248, -10.0},
    {5, {0.612, 0.687, 0.373, 0.120, 0.0232, 0.00244}, -13.54, -5.768, -7.771, -15.0},
}};

struct MultipartiteRow {
  int two_s;
  std::array<double, 6> amplitudes;  // 2|2 minimizer; -1 absent; s=5/2 a5 is
                                     // quoted only as < 1e-4
  double e22_4;
  double e13_4;
  double e_bs5;
  double e_bs6;
  double e_bs7;
  double e_bs8;
};

inline constexpr std::array<MultipartiteRow, 5> kMultipartite{{
    {1, {1.0, 0.0, -1, -1, -1, -1}, -1.500, -1.190, -1.780, -2.366, -2.697, -3.244},
    {2, {0.921, 0.387, 0.0418, -1, -1, -1}, -4.051, -3.828, -5.343, -6.771, -8.133, -9.537},
    {3, {0.775, 0.607, 0.171, 0.0281, -1, -1}, -8.131, -7.957, -10.90, -13.75, -16.56, -19.39},
    {4, {0.687, 0.669, 0.278, 0.0602, 0.00649, -1}, -13.74, -13.59, -18.46, -23.24, -27.99,
     -32.75},
    {5, {0.627, 0.669, 0.359, 0.134, 0.110, 1e-4}, -21.18, -20.71, -28.03, -35.23, -42.42,
     -49.62},
}};

}  // namespace spinwitness::reference
