#include "acutance/batchloss.hpp"

#include <cmath>
#include <exception>

namespace acut::batch {

double l2_loss(const Image& a, const Image& b) { return mean_squared_error(a, b); }

double l1_loss(const Image& a, const Image& b) { return mean_absolute_error(a, b); }

std::vector<ItemTerms> item_terms(std::span<const Item> items, Fidelity fidelity, const acutance::CsfParams& csf,
                                  const acutance::ViewingConditions& v) {
  for (const auto& item : items) {
    require_same_shape(item.clean, item.restored, "batch item");
    require_same_shape(item.clean, item.degraded, "batch item");
  }
  std::vector<ItemTerms> terms(items.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto& item = items[static_cast<std::size_t>(i)];
      auto& t = terms[static_cast<std::size_t>(i)];
      t.is_dead_leaves = item.is_dead_leaves;
      t.fidelity = fidelity == Fidelity::l2 ? l2_loss(item.clean, item.restored) : l1_loss(item.clean, item.restored);
      if (item.is_dead_leaves) t.acutance_loss = acutance::acutance_loss(item.restored, item.clean, csf, v);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return terms;
}

Loss combine(std::span<const ItemTerms> terms, double lambda) {
  if (terms.empty()) throw DomainError("batch_loss: empty batch");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("batch_loss: lambda must be >= 0");
  double fidelity_sum = 0.0;
  double acutance_sum = 0.0;
  std::size_t dead_leaves = 0;
  for (const auto& t : terms) {
    fidelity_sum += t.fidelity;
    if (t.is_dead_leaves) {
      acutance_sum += t.acutance_loss;
      ++dead_leaves;
    }
  }
  Loss loss;
  loss.fidelity = fidelity_sum / static_cast<double>(terms.size());
  loss.acutance = dead_leaves ? lambda * acutance_sum / static_cast<double>(dead_leaves) : 0.0;
  loss.total = loss.fidelity + loss.acutance;
  return loss;
}

Loss batch_loss(std::span<const Item> items, double lambda, Fidelity fidelity, const acutance::CsfParams& csf,
                const acutance::ViewingConditions& v) {
  if (items.empty()) throw DomainError("batch_loss: empty batch");
  return combine(item_terms(items, fidelity, csf, v), lambda);
}

}  // namespace acut::batch
