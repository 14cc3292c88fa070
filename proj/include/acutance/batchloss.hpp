#pragma once

#include <span>
#include <vector>

#include "acutance/acutance.hpp"
#include "acutance/image.hpp"

namespace acut::batch {

struct Item {
  Image clean;
  Image degraded;
  Image restored;
  /// m_i: the acutance term only sees dead leaves items.
  bool is_dead_leaves = false;
};

enum class Fidelity { l2, l1 };

/// Per-image mean squared error.
double l2_loss(const Image& a, const Image& b);
/// Per-image mean absolute error.
double l1_loss(const Image& a, const Image& b);

struct Loss {
  double total = 0.0;
  double fidelity = 0.0;
  /// Already multiplied by lambda.
  double acutance = 0.0;
};

/// Per-item terms, computed once and reused across a lambda sweep.
struct ItemTerms {
  double fidelity = 0.0;
  double acutance_loss = 0.0;
  bool is_dead_leaves = false;
};

/**
 * Mixed-batch objective:
 *   (1/K) sum_i fidelity(clean_i, restored_i) + (lambda / m^T 1) sum_i m_i L_acut(restored_i, clean_i)
 * The acutance term is 0 when the batch holds no dead leaves item.
 */
Loss batch_loss(std::span<const Item> items, double lambda, Fidelity fidelity, const acutance::CsfParams& csf = {},
                const acutance::ViewingConditions& v = {});

/// Item terms evaluated in parallel, returned in input order.
std::vector<ItemTerms> item_terms(std::span<const Item> items, Fidelity fidelity, const acutance::CsfParams& csf = {},
                                  const acutance::ViewingConditions& v = {});

/// Combines precomputed terms; sums run in index order so the result is reproducible.
Loss combine(std::span<const ItemTerms> terms, double lambda);

/// lambda grid swept in the reference experiments.
inline constexpr double kLambdaGrid[] = {0, 2, 5, 10, 20, 50, 100, 200, 500};

}  // namespace acut::batch
