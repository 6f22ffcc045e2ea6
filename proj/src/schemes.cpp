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

#include "cellsearch/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cellsearch
{

std::string_view architecture_name(Architecture arch)
{
    switch (arch)
    {
    case Architecture::abf:
        return "ABF";
    case Architecture::psn:
        return "PSN";
    case Architecture::hbf:
        return "HBF";
    case Architecture::dbf:
        return "DBF";
    }
    throw std::invalid_argument("unknown architecture");
}

std::optional<Architecture> parse_architecture(std::string_view name)
{
    for (auto arch : {Architecture::abf, Architecture::psn, Architecture::hbf, Architecture::dbf})
    {
        const auto canonical = architecture_name(arch);
        if (std::equal(name.begin(), name.end(), canonical.begin(), canonical.end(),
                       [](char a, char b) { return std::toupper(static_cast<unsigned char>(a)) == b; }))
            return arch;
    }
    return std::nullopt;
}

std::size_t SchemeKind::analog_branches() const
{
    switch (architecture)
    {
    case Architecture::abf:
        return 1;
    case Architecture::psn:
    case Architecture::hbf:
        return branches;
    case Architecture::dbf:
        return 0;
    }
    return 0;
}

void SchemeKind::validate(const Codebook &codebook) const
{
    if (architecture == Architecture::dbf)
        return;
    if (branches == 0)
        throw std::invalid_argument("scheme branches must be at least 1");
    if (architecture == Architecture::abf && branches != 1)
        throw std::invalid_argument("ABF has exactly one branch");
    if (branches > codebook.size())
        throw std::invalid_argument("scheme branches (" + std::to_string(branches) + ") exceed the codebook size (" +
                                    std::to_string(codebook.size()) + ")");
    if (architecture == Architecture::hbf && branches > codebook.n_antennas())
        throw std::invalid_argument("HBF branches must not exceed the number of MS antennas");
}

double clamp_ci_angle(double angle)
{
    return std::clamp(angle, -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
}

std::size_t select_combiner_ci(const Codebook &codebook, double ci_angle)
{
    const SteeringVector a = steering_vector(codebook.n_antennas(), clamp_ci_angle(ci_angle));
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < codebook.size(); ++i)
    {
        const double gain = std::abs(codebook.matrix().col(static_cast<Eigen::Index>(i)).dot(a.elements));
        if (gain > best_gain)
        {
            best_gain = gain;
            best = i;
        }
    }
    return best;
}

CombinerSelection select_adjacent(const Codebook &codebook, std::size_t main_index, std::size_t n_branches)
{
    const std::size_t card = codebook.size();
    if (main_index >= card)
        throw std::invalid_argument("select_adjacent: main index out of range");
    if (n_branches == 0 || n_branches > card)
        throw std::invalid_argument("select_adjacent: branch count must be in [1, " + std::to_string(card) + "]");

    CombinerSelection sel;
    sel.main_index = main_index;
    sel.indices.reserve(n_branches);
    sel.indices.push_back(main_index);
    for (std::size_t d = 1; sel.indices.size() < n_branches; ++d)
    {
        const std::size_t below = (main_index + card - d % card) % card;
        const std::size_t above = (main_index + d) % card;
        for (std::size_t candidate : {below, above})
        {
            if (sel.indices.size() < n_branches &&
                std::find(sel.indices.begin(), sel.indices.end(), candidate) == sel.indices.end())
                sel.indices.push_back(candidate);
        }
    }
    return sel;
}

CombinerSelection select_combiners(const Codebook &codebook, double ci_angle, std::size_t n_branches)
{
    CombinerSelection sel = select_adjacent(codebook, select_combiner_ci(codebook, ci_angle), n_branches);
    sel.ci_angle = clamp_ci_angle(ci_angle);
    return sel;
}

// ---------------------------------------------------------------------------
// MsFrontEnd

namespace
{
double snr_from_response(std::complex<double> response, double combiner_norm2, double tx_power_w, double noise_power_w)
{
    return std::norm(response) * tx_power_w / (combiner_norm2 * noise_power_w);
}

void check_link(double tx_power_w, double noise_power_w)
{
    if (!(noise_power_w > 0.0))
        throw std::invalid_argument("noise power must be positive");
    if (!(tx_power_w >= 0.0))
        throw std::invalid_argument("transmit power must be non-negative");
}
} // namespace

void MsFrontEnd::add_branch(const CMatrix &h, Eigen::Ref<const CVector> w, std::size_t ms_index)
{
    if (w.size() != h.rows())
        throw std::invalid_argument("combiner length does not match the number of MS antennas");
    rows_.emplace_back(w.adjoint() * h);
    norms2_.push_back(w.squaredNorm());
    ms_indices_.push_back(ms_index);
}

void MsFrontEnd::check_beam(Eigen::Ref<const CVector> w_bs) const
{
    if (static_cast<std::size_t>(w_bs.size()) != n_bs_)
        throw std::invalid_argument("beamformer length does not match the number of BS antennas");
}

MsFrontEnd MsFrontEnd::single(const CMatrix &h, Eigen::Ref<const CVector> w_ms, std::size_t ms_index)
{
    MsFrontEnd fe(Kind::single, static_cast<std::size_t>(h.cols()));
    fe.add_branch(h, w_ms, ms_index);
    return fe;
}

MsFrontEnd MsFrontEnd::switched(const CMatrix &h, const CombinerSelection &selection, const Codebook &codebook)
{
    if (selection.indices.empty())
        throw std::invalid_argument("PSN selection has no combiners");
    MsFrontEnd fe(Kind::switched, static_cast<std::size_t>(h.cols()));
    for (std::size_t index : selection.indices)
        fe.add_branch(h, codebook.matrix().col(static_cast<Eigen::Index>(index)), index);
    return fe;
}

MsFrontEnd MsFrontEnd::hybrid(const CMatrix &h, const CombinerSelection &selection, const Codebook &codebook)
{
    if (selection.indices.empty())
        throw std::invalid_argument("HBF selection has no combiners");
    MsFrontEnd fe(Kind::hybrid, static_cast<std::size_t>(h.cols()));
    const auto k = static_cast<Eigen::Index>(selection.indices.size());
    CMatrix w(h.rows(), k);
    for (Eigen::Index c = 0; c < k; ++c)
    {
        const std::size_t index = selection.indices[static_cast<std::size_t>(c)];
        w.col(c) = codebook.vector(index);
        fe.add_branch(h, w.col(c), index);
    }
    if (k > 1)
    {
        const CMatrix gram = w.adjoint() * w;
        fe.gram_.compute(gram);
        if (fe.gram_.info() != Eigen::Success || fe.gram_.rcond() < 1e-12)
            throw std::runtime_error("HBF combiner Gram matrix is singular or ill-conditioned");
    }
    return fe;
}

MsFrontEnd MsFrontEnd::digital(const CMatrix &h)
{
    MsFrontEnd fe(Kind::digital, static_cast<std::size_t>(h.cols()));
    fe.h_ = h;
    return fe;
}

MsFrontEnd MsFrontEnd::for_scheme(const SchemeKind &scheme, const CMatrix &h, const CombinerSelection &selection,
                                  const Codebook &codebook)
{
    switch (scheme.architecture)
    {
    case Architecture::abf:
        return single(h, codebook.matrix().col(static_cast<Eigen::Index>(selection.main_index)), selection.main_index);
    case Architecture::psn:
        return switched(h, selection, codebook);
    case Architecture::hbf:
        return hybrid(h, selection, codebook);
    case Architecture::dbf:
        return digital(h);
    }
    throw std::invalid_argument("unknown architecture");
}

BeamSnr MsFrontEnd::evaluate(Eigen::Ref<const CVector> w_bs, double tx_power_w, double noise_power_w) const
{
    check_beam(w_bs);
    check_link(tx_power_w, noise_power_w);

    switch (kind_)
    {
    case Kind::single:
    case Kind::switched: {
        BeamSnr best{-1.0, no_ms_index};
        for (std::size_t b = 0; b < rows_.size(); ++b)
        {
            const std::complex<double> response = (rows_[b] * w_bs).value();
            const double s = snr_from_response(response, norms2_[b], tx_power_w, noise_power_w);
            if (s > best.snr)
                best = {s, ms_indices_[b]};
        }
        return best;
    }
    case Kind::hybrid: {
        if (rows_.size() == 1)
        {
            const std::complex<double> response = (rows_[0] * w_bs).value();
            return {snr_from_response(response, norms2_[0], tx_power_w, noise_power_w), ms_indices_[0]};
        }
        CVector g(static_cast<Eigen::Index>(rows_.size()));
        for (std::size_t b = 0; b < rows_.size(); ++b)
            g[static_cast<Eigen::Index>(b)] = (rows_[b] * w_bs).value();
        const CVector whitened = gram_.solve(g);
        const double quad = std::max(0.0, g.dot(whitened).real());
        return {quad * tx_power_w / noise_power_w, ms_indices_[0]};
    }
    case Kind::digital: {
        const double energy = (h_ * w_bs).squaredNorm();
        return {energy * tx_power_w / noise_power_w, no_ms_index};
    }
    }
    throw std::logic_error("unreachable front-end kind");
}

double snr_single(const CMatrix &h, const CVector &w_bs, const CVector &w_ms, double tx_power_w, double noise_power_w)
{
    return MsFrontEnd::single(h, w_ms).snr(w_bs, tx_power_w, noise_power_w);
}

double snr_psn(const CMatrix &h, const CVector &w_bs, const CombinerSelection &selection, const Codebook &codebook,
               double tx_power_w, double noise_power_w)
{
    return MsFrontEnd::switched(h, selection, codebook).snr(w_bs, tx_power_w, noise_power_w);
}

double snr_hbf(const CMatrix &h, const CVector &w_bs, const CombinerSelection &selection, const Codebook &codebook,
               double tx_power_w, double noise_power_w)
{
    return MsFrontEnd::hybrid(h, selection, codebook).snr(w_bs, tx_power_w, noise_power_w);
}

double snr_dbf(const CMatrix &h, const CVector &w_bs, double tx_power_w, double noise_power_w)
{
    return MsFrontEnd::digital(h).snr(w_bs, tx_power_w, noise_power_w);
}

} // namespace cellsearch
