// Copyright The specpoint Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "specpoint/homog2d.hpp"
#include "specpoint/shift_model.hpp"

namespace specpoint::cli {

/// Shaded InSpectrum cells with the Sigma curve on top, drawn on plain axes.
std::string plane_spectrum_svg(const homog2d::PlaneSpectrum& s, const std::string& title);

/// Disk sigma, circle Sigma and unit circle sigma_omega of the shift model.
std::string shift_model_svg(const structured::ShiftModelReport& r);

}  // namespace specpoint::cli
