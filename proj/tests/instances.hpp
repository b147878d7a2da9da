// Copyright 2026 The wsim Authors
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


#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wsim/ct_states.hpp"
#include "wsim/gates.hpp"
#include "wsim/oracle.hpp"
#include "wsim/random.hpp"

namespace wsim::testing {

inline Factor random_factor(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double theta = std::acos(std::sqrt(u(rng)));
    double phi = 2 * std::numbers::pi * u(rng), chi = 2 * std::numbers::pi * u(rng);
    return {std::polar(std::cos(theta), chi), std::polar(std::sin(theta), phi)};
}

inline std::vector<Factor> random_factors(int n, std::mt19937_64 &rng) {
    std::vector<Factor> f;
    for (int q = 0; q < n; ++q) f.push_back(random_factor(rng));
    return f;
}

inline Circuit random_clifford(int n, int gates, std::mt19937_64 &rng) {
    Circuit c;
    for (int g = 0; g < gates; ++g) {
        int a = static_cast<int>(rng() % static_cast<unsigned>(n));
        int b = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        if (b >= a) ++b;
        switch (rng() % 7) {
            case 0:
            case 1: c.push_back(Gate::single(GateKind::H, a)); break;
            case 2: c.push_back(Gate::single(GateKind::S, a)); break;
            case 3: c.push_back(Gate::two(GateKind::CNOT, a, b)); break;
            case 4: c.push_back(Gate::two(GateKind::CZ, a, b)); break;
            case 5: c.push_back(Gate::single(rng() % 2 ? GateKind::X : GateKind::Z, a)); break;
            default: c.push_back(Gate::single(rng() % 2 ? GateKind::Y : GateKind::Sdg, a)); break;
        }
    }
    return c;
}

inline MpsDescription random_mps(int n, int bond, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    MpsDescription d;
    for (int j = 0; j < n; ++j) {
        std::array<Eigen::MatrixXcd, 2> site;
        for (auto &m : site) {
            m.resize(bond, bond);
            for (int r = 0; r < bond; ++r)
                for (int c = 0; c < bond; ++c) m(r, c) = Amplitude(g(rng), g(rng));
        }
        d.sites.push_back(site);
    }
    return d;
}

/// Total-variation distance between `draws` samples and the exhaustive distribution.
inline double sampling_tv(const CtState &psi, std::uint64_t draws, const RandomStream &stream) {
    const std::size_t dim = std::size_t{1} << psi.n();
    std::vector<double> counts(dim, 0.0);
    for (std::uint64_t k = 0; k < draws; ++k) {
        Rng rng = stream.at(k);
        counts[psi.sample_word(rng)] += 1.0;
    }
    double tv = 0;
    for (std::size_t x = 0; x < dim; ++x) {
        tv += std::abs(counts[x] / static_cast<double>(draws) - psi.probability_word(x));
    }
    return tv / 2;
}

/// Expected TV of an exact sampler from the same distribution (normal approximation).
inline double tv_noise_floor(const CtState &psi, std::uint64_t draws) {
    const std::size_t dim = std::size_t{1} << psi.n();
    double acc = 0;
    for (std::size_t x = 0; x < dim; ++x) {
        double p = psi.probability_word(x);
        acc += std::sqrt(2 * p * (1 - p) / (std::numbers::pi * static_cast<double>(draws)));
    }
    return acc / 2;
}

inline double max_amplitude_error(const CtState &psi, const DenseState &ref) {
    double worst = 0;
    for (std::size_t x = 0; x < ref.amps.size(); ++x) {
        worst = std::max(worst, std::abs(psi.amplitude_word(x) - ref.amps[x]));
    }
    return worst;
}

}  // namespace wsim::testing
