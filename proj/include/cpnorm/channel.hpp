// Copyright (c) 2026 the cpnorm authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpnorm/complex_matrix.hpp"

namespace cpnorm {

// Thrown when a map fails the Choi PSD certificate and non-CP inputs were
// not explicitly allowed.
class NotCompletelyPositiveError : public std::runtime_error {
 public:
  explicit NotCompletelyPositiveError(double margin)
      : std::runtime_error("map is not completely positive (min Choi "
                           "eigenvalue " +
                           std::to_string(margin) + ")"),
        min_choi_eigenvalue(margin) {}

  double min_choi_eigenvalue;
};

// Completely positive map in Kraus form: Phi(A) = sum_i K_i A K_i^H with all
// Kraus operators d_out x d_in. CP holds by construction; non-CP maps live in
// MatrixUnitMap below so this invariant stays unconditional.
class KrausMap {
 public:
  explicit KrausMap(std::vector<ComplexMatrix> kraus_ops);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& a) const;
  // Adjoint map sum_i K_i^H B K_i.
  ComplexMatrix adjoint_apply(const ComplexMatrix& b) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t d_in_;
  std::size_t d_out_;
};

// General linear map on matrices stored as its action on matrix units
// M_ij = Phi(E_ij). Used for maps with no Kraus form, e.g. the transpose map
// negative control.
class MatrixUnitMap {
 public:
  MatrixUnitMap(std::size_t d_in, std::size_t d_out,
                std::vector<ComplexMatrix> unit_images);

  static MatrixUnitMap transpose_map(std::size_t d);
  static MatrixUnitMap from_kraus(const KrausMap& k);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  const ComplexMatrix& unit_image(std::size_t i, std::size_t j) const {
    return images_[i * d_in_ + j];
  }

  ComplexMatrix apply(const ComplexMatrix& a) const;
  ComplexMatrix adjoint_apply(const ComplexMatrix& b) const;

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  std::vector<ComplexMatrix> images_;  // row-major over (i, j)
};

// Non-owning reference to either map kind; the numerical layers (doubling,
// solver) are written against this.
class MapRef {
 public:
  MapRef(const KrausMap& k);         // NOLINT: implicit by design
  MapRef(const MatrixUnitMap& m);    // NOLINT

  std::size_t d_in() const;
  std::size_t d_out() const;
  ComplexMatrix apply(const ComplexMatrix& a) const;
  ComplexMatrix adjoint_apply(const ComplexMatrix& b) const;
  ComplexMatrix choi() const;
  bool kraus_backed() const { return kraus_ != nullptr; }

 private:
  const KrausMap* kraus_ = nullptr;
  const MatrixUnitMap* units_ = nullptr;
};

// Choi matrix (Phi applied to the unnormalized maximally entangled matrix-
// unit sum): sum_ij Phi(E_ij) (x) E_ij, of size (d_out*d_in)^2.
ComplexMatrix choi(const KrausMap& k);
ComplexMatrix choi(const MatrixUnitMap& m);

struct CpCertificate {
  bool completely_positive;
  double min_choi_eigenvalue;
};

// CP iff the Choi matrix is PSD: min eigenvalue >= -kPsdClipTol.
CpCertificate is_completely_positive(const KrausMap& k);
CpCertificate is_completely_positive(const MatrixUnitMap& m);
CpCertificate is_completely_positive(const MapRef& m);

// Phi (x) 1_2 on the doubled space C^2 (x) H (block index first): Kraus
// operators I_2 (x) K_i, so block2x2 inputs map blockwise.
KrausMap extend_identity2(const KrausMap& k);
MatrixUnitMap extend_identity2(const MatrixUnitMap& m);

// Blockwise application of Phi (x) 1_2 to a 2d x 2d matrix; agrees with the
// Kraus-level extension and avoids materializing it.
ComplexMatrix apply_extended2(const MapRef& phi, const ComplexMatrix& x);

// Built-in channel constructors.
KrausMap make_identity_channel(std::size_t d);
// rho -> (1 - lambda) rho + lambda Tr(rho) I/d, lambda in [0, 1].
KrausMap make_depolarizing(std::size_t d, double lambda);
// Standard two-Kraus qubit amplitude damping, gamma in [0, 1].
KrausMap make_amplitude_damping(double gamma);
// Gaussian (d_out*kraus_rank) x d_in matrix, columns orthonormalized and
// sliced into Kraus operators; trace preserving by construction and
// deterministic per seed. Requires d_out * kraus_rank >= d_in.
KrausMap make_random_stinespring(std::size_t d_in, std::size_t d_out,
                                 std::size_t kraus_rank, std::uint64_t seed);
// Same ensemble with each Kraus operator rescaled by an independent positive
// factor: completely positive but not trace preserving.
KrausMap make_random_cp(std::size_t d_in, std::size_t d_out,
                        std::size_t kraus_rank, std::uint64_t seed,
                        bool trace_preserving);

enum class ChannelFamily {
  identity,
  depolarizing,
  amplitude_damping,
  random_stinespring,
  transpose,
  explicit_kraus,
};

std::string family_name(ChannelFamily f);

// Declarative channel description; the CLI's file format parses into this.
struct ChannelSpec {
  std::string name;
  ChannelFamily family = ChannelFamily::identity;
  std::map<std::string, double> params;
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::vector<ComplexMatrix> kraus;  // explicit_kraus only
};

// Owning realization of a ChannelSpec (exactly one of the two is set).
struct RealizedChannel {
  ChannelSpec spec;
  std::vector<KrausMap> kraus_map;      // 0 or 1 entries
  std::vector<MatrixUnitMap> unit_map;  // 0 or 1 entries

  bool kraus_backed() const { return !kraus_map.empty(); }
  MapRef ref() const;
};

RealizedChannel make_channel(const ChannelSpec& spec);

}  // namespace cpnorm
