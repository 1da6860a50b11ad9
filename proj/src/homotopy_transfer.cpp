#include "artifact/homotopy_transfer.hpp"

#include <string>

#include "artifact/poly_structures.hpp"

namespace artifact {

int t_parity(const TSmallKey& k) { return (degree(k) + 1) & 1; }
int d_parity(const DSmallKey& k) { return (degree(k) + 1) & 1; }

int d_required_trunc(const std::vector<DSmallKey>& t) {
  int s = 0;
  for (const auto& k : t) s += order(k);
  return s + 1;
}

std::unique_ptr<TTransfer> make_t_transfer(const FedosovData& fd, const TContraction& perturbed) {
  const Frame f = fd.frame;
  auto bracket = [f](const PolyVector& x, const PolyVector& y) { return schouten(f, x, y); };
  // Every tree keeps truncation loss at weight >= N, so sigma is exact once N >= 1.
  auto budget = [f](const std::vector<TSmallKey>&) {
    if (f.N < 1) throw FiltrationError("polyvector transfer requires N >= 1");
  };
  return std::make_unique<TTransfer>(perturbed, bracket, t_parity, budget);
}

std::unique_ptr<DTransfer> make_d_transfer(const FedosovData& fd, const DContraction& perturbed) {
  const Frame f = fd.dframe;
  auto bracket = [f](const PolyDiffOp& x, const PolyDiffOp& y) { return gerstenhaber(f, x, y); };
  // Missing Fedosov terms enter at excess >= N on top of the inputs' excess -order, while
  // sigma reads excess <= 0; exactness needs N > total input order.
  auto budget = [f](const std::vector<DSmallKey>& t) {
    int need = d_required_trunc(t);
    if (f.N < need)
      throw FiltrationError("polydifferential transfer on this tuple requires N >= " + std::to_string(need));
  };
  return std::make_unique<DTransfer>(perturbed, bracket, d_parity, budget);
}

}  // namespace artifact
