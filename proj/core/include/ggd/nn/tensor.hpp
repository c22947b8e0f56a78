#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ggd/graph.hpp"
#include "ggd/random.hpp"

namespace ggd::nn {

#ifdef GGD_USE_FLOAT32
using Real = float;
#else
using Real = double;
#endif

// Row-major dense 2-D tensor. Every model in the toolkit works on node x
// feature matrices, so two dimensions are all the engine needs.
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<Real, Eigen::RowMajor>;
using Tensor = Matrix;

// Throws ShapeError with `what` when `ok` is false.
void require_shape(bool ok, const std::string& what);
std::string shape_string(const Matrix& m);

// Glorot-uniform initialization.
Matrix glorot(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Matrix random_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng, Real scale = 1);

// D^-1/2 (A + I) D^-1/2 with degrees counted on A + I.
Matrix normalize_adjacency(const Graph& g);
SparseMatrix normalized_adjacency_sparse(const Graph& g);

// Model parameters are addressed through a flat, ordered list of pointers;
// gradients and optimizer moments use the same order.
struct ParamRef {
    std::string name;
    Matrix* value = nullptr;
};
using ParamList = std::vector<ParamRef>;
using Gradients = std::vector<Matrix>;

Gradients zero_gradients(const ParamList& params);
void accumulate(Gradients& into, const Gradients& from);
void scale(Gradients& grads, Real factor);
std::size_t parameter_count(const ParamList& params);
bool all_finite(const ParamList& params);

}  // namespace ggd::nn
