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

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wsim/bitstring.hpp"
#include "wsim/ecs_ops.hpp"
#include "wsim/estimators.hpp"
#include "wsim/gates.hpp"
#include "wsim/random.hpp"
#include "wsim/sampling.hpp"

namespace wsim {

inline constexpr int kExhaustiveFourierBound = 20;
inline constexpr int kExhaustiveDegreeBound = 16;

/// g: {0,1}^m -> {0,1} behind a query counter. Copies share the counter.
class BooleanOracle {
   public:
    BooleanOracle(int m, std::function<bool(std::uint64_t)> f, std::string name);

    int m() const { return m_; }
    const std::string &name() const { return name_; }
    bool evaluate(const BitString &x) const;
    bool evaluate_word(std::uint64_t x) const {
        count_->fetch_add(1, std::memory_order_relaxed);
        return f_(x);
    }
    /// (-1)^{g(x)}.
    int sign(std::uint64_t x) const { return evaluate_word(x) ? -1 : 1; }
    std::uint64_t queries() const { return count_->load(); }
    void reset_queries() const { count_->store(0); }
    /// Same function for oracle gates; does not count queries.
    std::shared_ptr<const BooleanFunction> as_function() const;

   private:
    int m_;
    std::function<bool(std::uint64_t)> f_;
    std::string name_;
    std::shared_ptr<std::atomic<std::uint64_t>> count_;
};

/// Coefficients are normalized: coeff(u) = 2^{-m} sum_x (-1)^{u.x + g(x)}.
struct FourierEntry {
    BitString u;
    double coeff = 0.0;
    double accuracy = 0.0;
};

struct FourierTable {
    int m = 1;
    std::vector<FourierEntry> entries;
    /// False when the search ran out of budget; entries are then partial.
    bool valid = true;
    std::string note;
    /// 1 - sum of squared coefficients in the table.
    double residual_weight = 0.0;
    std::uint64_t queries = 0;
    std::uint64_t estimates = 0;

    void validate() const;
    std::optional<FourierEntry> find(const BitString &u) const;
};

namespace kernels {

/// In-place fast Walsh-Hadamard transform, unnormalized.
void walsh_hadamard_parallel(std::vector<double> &v);
void walsh_hadamard_serial(std::vector<double> &v);

}  // namespace kernels

/// All 2^m coefficients, indexed by the word of u.
std::vector<double> fourier_spectrum(const BooleanOracle &g);
double fourier_coefficient_exact(const BooleanOracle &g, const BitString &u);
Estimate estimate_fourier_coefficient(const BooleanOracle &g, const BitString &u, double epsilon, double delta,
                                      const RandomStream &stream);

struct KmOptions {
    /// Read subcube weights off one exhaustive transform when 2^m queries
    /// cost less than a single sampled weight estimate.
    bool exhaustive_when_cheaper = true;
};

/// Every u with |coeff(u)| >= threshold, plus possibly some with
/// |coeff(u)| >= threshold / 4, each estimated to threshold / 4.
FourierTable km_heavy_coefficients(const BooleanOracle &g, double threshold, double delta,
                                   const RandomStream &stream, const KmOptions &options = {});

struct SparsenessDegree {
    std::size_t sparseness = 0;
    int degree = 0;
};

/// Coefficients of the GF(2) polynomial (Moebius transform), indexed by monomial mask.
std::vector<std::uint8_t> algebraic_normal_form(const BooleanOracle &g);
SparsenessDegree sparseness_and_degree(const BooleanOracle &g);

/// <u|A|v> = coeff(u xor v) over the table entries. Entries must satisfy
/// |coeff| + accuracy >= theta.
EcsOperator wg_operator(const FourierTable &table, int m, double theta);

/// Hadamards on s1, basis-preserving v, Hadamards on s2, measure `measured`
/// (which must lie inside s2), then g on the measured bits in listed order.
struct FiveRoundCircuit {
    int n = 1;
    std::vector<int> s1;
    Circuit v;
    std::vector<int> s2;
    std::vector<int> measured;

    void validate() const;
};

struct FiveRoundResult {
    EstimateReport report;
    FourierTable table;
    double theta = 0.0;
    /// Bound on |<W_g> - <A>| from the dropped entries: hint * theta.
    double truncation_bound = 0.0;
};

/// Estimates E[(-1)^{g(u)}] with total error at most 2 epsilon: epsilon
/// from sampling and hint * theta = epsilon from dropping light coefficients.
FiveRoundResult simulate_five_round(const FiveRoundCircuit &circuit, const BooleanOracle &g,
                                    std::size_t sparseness_hint, const ErrorBudget &budget,
                                    const RandomStream &stream, const KmOptions &km = {});

// ---- oracle registry ----------------------------------------------------------

BooleanOracle parity_oracle(const BitString &a);
BooleanOracle and_oracle(int m);
BooleanOracle constant_oracle(int m, bool value);
/// g(x) = h(a_1.x, ..., a_k.x) for random independent a_i and a random h
/// whose own spectrum is full; sparseness 2^k.
BooleanOracle random_sparse_oracle(int m, int k, std::uint64_t seed);
/// Inputs are k-1 rows of k bits; 1 iff the rows are independent, so the
/// system has exactly one nonzero solution.
BooleanOracle simon_postprocessing_oracle(int k);
BooleanOracle truth_table_oracle(std::vector<bool> table, std::string name);
/// One 0/1 per line, 2^m lines.
BooleanOracle load_truth_table(const std::string &path);
/// "parity:a=0110", "and", "and:m=3", "zero:m=4", "simon-postproc:n=3",
/// "random-sparse:s=4,seed=7,m=12"; anything else is read as a truth-table file.
BooleanOracle make_oracle(const std::string &spec);

/// Simon function f(x) = min(x, x xor a), one oracle gate per output bit:
/// inputs on qubits [0, k), outputs on [k, 2k).
Circuit simon_oracle_circuit(const BitString &a);

}  // namespace wsim
