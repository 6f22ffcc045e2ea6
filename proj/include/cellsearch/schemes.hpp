// SPDX-License-Identifier: Apache-2.0
//
// mmwave-cellsearch: link-level initial cell search simulator for mmWave receivers
// Copyright (C) 2026 The mmwave-cellsearch authors
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

#ifndef CELLSEARCH_SCHEMES_HPP
#define CELLSEARCH_SCHEMES_HPP

#include "cellsearch/array.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace cellsearch
{

/// Receiver architecture at the mobile station.
///  abf: one analog combiner, one RF chain
///  psn: several analog combiners, a comparator picks the strongest, one RF chain
///  hbf: several analog combiners, each with its own RF chain, digital combining across them
///  dbf: one RF chain per antenna
enum class Architecture
{
    abf,
    psn,
    hbf,
    dbf
};

std::string_view architecture_name(Architecture arch); // "ABF", "PSN", ...
std::optional<Architecture> parse_architecture(std::string_view name);

struct SchemeKind
{
    Architecture architecture = Architecture::abf;
    std::size_t branches = 1; // N_C for PSN, N_RF for HBF; 1 for ABF; ignored for DBF

    static SchemeKind abf() { return {Architecture::abf, 1}; }
    static SchemeKind psn(std::size_t n_combiners) { return {Architecture::psn, n_combiners}; }
    static SchemeKind hbf(std::size_t n_rf_chains) { return {Architecture::hbf, n_rf_chains}; }
    static SchemeKind dbf() { return {Architecture::dbf, 1}; }

    // Number of analog combiners drawn from the codebook (0 for DBF).
    std::size_t analog_branches() const;

    // Throws std::invalid_argument when the branch count does not fit the codebook.
    void validate(const Codebook &codebook) const;
};

struct CombinerSelection
{
    std::size_t main_index = 0;
    std::vector<std::size_t> indices; // main first, then neighbours
    double ci_angle = 0.0;
};

/// Clamps a context-information angle to the steerable range [-pi/2, pi/2].
double clamp_ci_angle(double angle);

/// Index of the codebook vector maximizing |w_i^H a(phi_ci)|; ties go to the lowest index.
std::size_t select_combiner_ci(const Codebook &codebook, double ci_angle);

/// The main index plus the n_branches - 1 nearest indices in circular index distance.
/// At equal distance the neighbour below (main - d) is taken before the one above.
CombinerSelection select_adjacent(const Codebook &codebook, std::size_t main_index, std::size_t n_branches);

/// select_combiner_ci followed by select_adjacent.
CombinerSelection select_combiners(const Codebook &codebook, double ci_angle, std::size_t n_branches);

inline constexpr std::size_t no_ms_index = std::numeric_limits<std::size_t>::max();

struct BeamSnr
{
    double snr = 0.0;                  // linear
    std::size_t ms_index = no_ms_index; // codebook index of the combiner that produced it
};

/// The mobile-station receive chain for one channel matrix and one combiner configuration.
///
/// Everything that depends only on (H, MS combiners) is computed once at construction, so a
/// BS-beam sweep costs one N_BS-length inner product per analog branch and beam. The free
/// snr_* functions below are thin wrappers over this class, which keeps sweep results and
/// per-pair evaluations bit-identical.
class MsFrontEnd
{
  public:
    static MsFrontEnd single(const CMatrix &h, Eigen::Ref<const CVector> w_ms, std::size_t ms_index = no_ms_index);
    static MsFrontEnd switched(const CMatrix &h, const CombinerSelection &selection, const Codebook &codebook);
    static MsFrontEnd hybrid(const CMatrix &h, const CombinerSelection &selection, const Codebook &codebook);
    static MsFrontEnd digital(const CMatrix &h);

    /// Builds the front end matching scheme; selection and codebook are unused for DBF.
    static MsFrontEnd for_scheme(const SchemeKind &scheme, const CMatrix &h, const CombinerSelection &selection,
                                 const Codebook &codebook);

    BeamSnr evaluate(Eigen::Ref<const CVector> w_bs, double tx_power_w, double noise_power_w) const;
    double snr(Eigen::Ref<const CVector> w_bs, double tx_power_w, double noise_power_w) const
    {
        return evaluate(w_bs, tx_power_w, noise_power_w).snr;
    }

    std::size_t n_bs() const { return n_bs_; }

  private:
    enum class Kind
    {
        single,
        switched,
        hybrid,
        digital
    };

    MsFrontEnd(Kind kind, std::size_t n_bs) : kind_(kind), n_bs_(n_bs) {}
    void add_branch(const CMatrix &h, Eigen::Ref<const CVector> w, std::size_t ms_index);
    void check_beam(Eigen::Ref<const CVector> w_bs) const;

    Kind kind_;
    std::size_t n_bs_;
    std::vector<Eigen::RowVectorXcd> rows_; // w_i^H H per branch
    std::vector<double> norms2_;            // ||w_i||^2
    std::vector<std::size_t> ms_indices_;
    Eigen::LLT<CMatrix> gram_;              // hybrid: W^H W
    CMatrix h_;                             // digital only
};

/// |w_ms^H H w_bs|^2 P / (||w_ms||^2 sigma^2).
double snr_single(const CMatrix &h, const CVector &w_bs, const CVector &w_ms, double tx_power_w,
                  double noise_power_w);

/// Best single-branch SNR over the selected combiners.
double snr_psn(const CMatrix &h, const CVector &w_bs, const CombinerSelection &selection, const Codebook &codebook,
               double tx_power_w, double noise_power_w);

/// Whitened maximum-ratio combining across the analog branch outputs:
/// (P / sigma^2) g^H (W^H W)^{-1} g with g = W^H H w_bs.
double snr_hbf(const CMatrix &h, const CVector &w_bs, const CombinerSelection &selection, const Codebook &codebook,
               double tx_power_w, double noise_power_w);

/// Unconstrained matched filter: P ||H w_bs||^2 / sigma^2.
double snr_dbf(const CMatrix &h, const CVector &w_bs, double tx_power_w, double noise_power_w);

} // namespace cellsearch

#endif
