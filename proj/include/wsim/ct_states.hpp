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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wsim/basis_op.hpp"
#include "wsim/bitstring.hpp"
#include "wsim/gates.hpp"
#include "wsim/random.hpp"
#include "wsim/sampling.hpp"
#include "wsim/stabilizer.hpp"

namespace wsim {

/// Basis the state's bit strings refer to: |x> or H^n|x>.
enum class Frame { Computational, PlusMinus };
const char *frame_name(Frame f);

enum class StateFamily { Product, Phase, Stabilizer, Mps, QftProduct, Matchgate, BasisImage, Tensor, Dense };
const char *family_name(StateFamily f);

/// One qubit factor (<0|psi_i>, <1|psi_i>).
using Factor = std::array<Amplitude, 2>;

/// Backing implementation of a CT state; all methods are pure.
class CtModel {
   public:
    virtual ~CtModel() = default;
    virtual int n() const = 0;
    virtual Amplitude amplitude(std::uint64_t x) const = 0;
    virtual std::uint64_t sample(Rng &rng) const = 0;
    virtual StateFamily family() const = 0;
    virtual std::string description() const = 0;
};

/// A state with efficient amplitudes <x|psi> and an exact sampler from
/// |<x|psi>|^2. Cheap to copy; the model is shared and immutable.
class CtState {
   public:
    CtState() = default;
    explicit CtState(std::shared_ptr<const CtModel> model, Frame frame = Frame::Computational)
        : model_(std::move(model)), frame_(frame) {}

    int n() const { return model_->n(); }
    Frame frame() const { return frame_; }
    StateFamily family() const { return model_->family(); }
    std::string description() const { return model_->description(); }

    Amplitude amplitude(const BitString &x) const;
    Amplitude amplitude_word(std::uint64_t x) const { return model_->amplitude(x); }
    double probability_word(std::uint64_t x) const { return std::norm(model_->amplitude(x)); }
    BitString sample(Rng &rng) const { return BitString(n(), model_->sample(rng)); }
    std::uint64_t sample_word(Rng &rng) const { return model_->sample(rng); }
    Sampler sampler() const;

    const CtModel &model() const { return *model_; }
    std::shared_ptr<const CtModel> model_ptr() const { return model_; }
    template <class T>
    const T *as() const {
        return dynamic_cast<const T *>(model_.get());
    }
    CtState with_frame(Frame f) const { return CtState(model_, f); }

   private:
    std::shared_ptr<const CtModel> model_;
    Frame frame_ = Frame::Computational;
};

/// p_{S,y}: probability that the qubits in `mask` read the bits of `values`
/// at the same positions.
struct MarginalOracle {
    int n = 1;
    std::function<double(std::uint64_t mask, std::uint64_t values)> probability;
};

/// Draws qubit 0, 1, ..., n-1 in turn from the conditionals of `m`.
BitString marginal_chain_sampler(const MarginalOracle &m, Rng &rng);

// ---- families ---------------------------------------------------------------

class ProductModel final : public CtModel {
   public:
    explicit ProductModel(std::vector<Factor> factors);
    int n() const override { return static_cast<int>(factors_.size()); }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::Product; }
    std::string description() const override;
    const std::vector<Factor> &factors() const { return factors_; }
    MarginalOracle marginals() const;

   private:
    std::vector<Factor> factors_;
};

class PhaseModel final : public CtModel {
   public:
    PhaseModel(int n, std::function<double(const BitString &)> theta);
    int n() const override { return n_; }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::Phase; }
    std::string description() const override { return "phase state on " + std::to_string(n_) + " qubits"; }

   private:
    int n_;
    std::function<double(const BitString &)> theta_;
};

class StabilizerModel final : public CtModel {
   public:
    StabilizerModel(int n, Circuit circuit);
    int n() const override { return tableau_.n(); }
    Amplitude amplitude(std::uint64_t x) const override { return tableau_.amplitude(x); }
    std::uint64_t sample(Rng &rng) const override { return tableau_.sample(rng); }
    StateFamily family() const override { return StateFamily::Stabilizer; }
    std::string description() const override;
    const Circuit &circuit() const { return circuit_; }
    const StabilizerTableau &tableau() const { return tableau_; }
    MarginalOracle marginals() const;

   private:
    Circuit circuit_;
    StabilizerTableau tableau_;
};

/// amplitude(x) = Tr(A_1[x_1] ... A_n[x_n]) / norm.
struct MpsDescription {
    std::vector<std::array<Eigen::MatrixXcd, 2>> sites;
};

class MpsModel final : public CtModel {
   public:
    explicit MpsModel(MpsDescription desc);
    int n() const override { return static_cast<int>(desc_.sites.size()); }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::Mps; }
    std::string description() const override;
    const MpsDescription &desc() const { return desc_; }
    double norm() const { return norm_; }

   private:
    double prefix_weight(const Eigen::MatrixXcd &prefix, int next_site) const;

    MpsDescription desc_;
    double norm_ = 1.0;
    // right_[j] = E_j ... E_{n-1}, transfer matrices of the trailing sites; right_[n] = I.
    std::vector<Eigen::MatrixXcd> right_;
};

/// QFT over Z_{2^n} applied to a product state.
class QftProductModel final : public CtModel {
   public:
    explicit QftProductModel(std::vector<Factor> factors);
    int n() const override { return static_cast<int>(factors_.size()); }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::QftProduct; }
    std::string description() const override;
    const std::vector<Factor> &factors() const { return factors_; }

   private:
    Amplitude factor_value(int j, std::uint64_t x) const;
    std::vector<Factor> factors_;
};

class BasisImageModel final : public CtModel {
   public:
    BasisImageModel(BasisPreservingOp op, CtState inner);
    int n() const override { return op_.n; }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override { return op_.forward(inner_.sample_word(rng)); }
    StateFamily family() const override { return StateFamily::BasisImage; }
    std::string description() const override;
    const BasisPreservingOp &op() const { return op_; }
    const CtState &inner() const { return inner_; }

   private:
    BasisPreservingOp op_;
    CtState inner_;
};

class TensorModel final : public CtModel {
   public:
    TensorModel(CtState head, CtState tail);
    int n() const override { return head_.n() + tail_.n(); }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::Tensor; }
    std::string description() const override;
    const CtState &head() const { return head_; }
    const CtState &tail() const { return tail_; }

   private:
    CtState head_, tail_;
};

/// Explicit 2^n amplitude vector with a cumulative-table sampler. Small n only.
class DenseModel final : public CtModel {
   public:
    explicit DenseModel(std::vector<Amplitude> amplitudes);
    int n() const override { return n_; }
    Amplitude amplitude(std::uint64_t x) const override { return amps_[x]; }
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::Dense; }
    std::string description() const override { return "dense vector on " + std::to_string(n_) + " qubits"; }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }

   private:
    int n_;
    std::vector<Amplitude> amps_;
    std::vector<double> cumulative_;
};

// ---- constructors -----------------------------------------------------------

CtState product_state(std::vector<Factor> factors);
CtState basis_state(const BitString &x);
CtState plus_state(int n);
CtState phase_state(int n, std::function<double(const BitString &)> theta);
CtState stabilizer_state(int n, Circuit circuit);
CtState mps_state(MpsDescription desc);
CtState qft_product_state(std::vector<Factor> factors);
CtState apply_basis_preserving(const BasisPreservingOp &op, const CtState &psi);
/// H^n|psi> for product, stabilizer, MPS and tensor combinations thereof;
/// the result is tagged with the plus/minus frame.
CtState rotate_to_pm_basis(const CtState &psi);
/// |head>|tail>, head on the leading qubits.
CtState tensor(const CtState &head, const CtState &tail);
CtState dense_state(std::vector<Amplitude> amplitudes);

}  // namespace wsim
