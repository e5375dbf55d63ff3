// SPDX-License-Identifier: Apache-2.0
//
// fsolink: performance analysis of a three-hop OGS-HAP-OIRS-user optical link
// Copyright (C) 2026 fsolink contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FSOLINK_LINK_OGS_HAP_HPP
#define FSOLINK_LINK_OGS_HAP_HPP

#include "fsolink/hop.hpp"
#include "fsolink/scenario.hpp"

// First hop (OGS to HAP): Gamma-Gamma turbulence, pointing errors, Beer-Lambert loss.
namespace fsolink::hop1
{
    double ha_pdf(double h, const GGParams& gg);
    double hg1_pdf(double h, double eta_s2, double A0);

    HopModel model(const LinkOneParams& p);

    double snr_cdf(double gamma, const LinkOneParams& p, double gamma_bar, const ContourConfig& cfg = {});
    double snr_pdf(double gamma, const LinkOneParams& p, double gamma_bar, const ContourConfig& cfg = {});

    // The CDF written as 1 - eta^2 / (Gamma(a) Gamma(b)) G^{4,0}_{2,4}[...]. Cancels badly deep in
    // the lower tail; kept as a cross-check of snr_cdf.
    double snr_cdf_meijer(double gamma, const LinkOneParams& p, double gamma_bar, const ContourConfig& cfg = {});
} // namespace fsolink::hop1

#endif
