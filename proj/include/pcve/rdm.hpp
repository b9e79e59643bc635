#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pcve {

// Representational dissimilarity matrix over a set of labelled patches.
// `source` is an in-memory tag ("reference", "crf23:layer0", ...) carried for
// diagnostics; the on-disk format stores only labels and the matrix.
struct Rdm {
  std::vector<std::string> labels;
  Eigen::MatrixXd matrix;
  std::string source;

  std::int64_t size() const { return matrix.rows(); }
  void validate() const;  // symmetry, zero diagonal, non-negativity, label count
};

// Pairwise euclidean distances between feature vectors, in label order.
Rdm compute_rdm(const std::map<std::string, Eigen::VectorXf>& features,
                const std::vector<std::string>& labels,
                std::string source = {});

// Strict upper triangle, row-major, length N(N-1)/2.
Eigen::VectorXd vectorize_rdm(const Rdm& rdm);

// 1 - cos(u, v), clamped to [0, 2].
double cosine_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// File layout: magic "PCVERDM1" | u32 N | per label u32 length + bytes
// | row-major N*N little-endian f32.
void save_rdm(const std::filesystem::path& path, const Rdm& rdm);
Rdm load_rdm(const std::filesystem::path& path);

}  // namespace pcve
