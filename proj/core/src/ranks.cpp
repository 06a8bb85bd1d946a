#include "smf/ranks.hpp"

#include "smf/errors.hpp"

namespace smf {

SuperDim rr_supercurve(long long deg_l, long long g, long long deg_j) {
  if (g < 0) throw precondition_violated_error("genus must be non-negative");
  return SuperDim{deg_l - g + 1, deg_l + deg_j - g + 1};
}

long long rr_supercurve_schi(long long deg_j) { return -deg_j; }

SuperDim rr_susy(long long deg_l, long long g) {
  if (g < 2) throw precondition_violated_error("SUSY case needs genus >= 2");
  return SuperDim{deg_l - g + 1, deg_l};
}

long long rr_susy_schi(long long g) { return 1 - g; }

SuperDim ramond_rank_table(long long g, long long n_r, int i, int j) {
  if (g < 2) throw precondition_violated_error("rank tables need genus >= 2");
  if (n_r % 2 != 0) throw odd_ramond_count_error("n_R must be even");
  if (n_r <= 6 * g - 6)
    throw precondition_violated_error("rank tables need n_R > 6g - 6");
  if (i != 0 && i != 1)
    throw precondition_violated_error("i must be 0 or 1");
  if (i == 0) {
    switch (j) {
      case -2:
        return SuperDim{n_r + 3 - 3 * g, 3 * n_r / 2 + 2 - 2 * g};
      case -1:
        return SuperDim{n_r + 1 - g, n_r / 2 + 2 - 2 * g};
      case 0:
        return SuperDim{1, n_r / 2};
      case 1:
        return SuperDim{g, 0};
      default:
        break;
    }
  } else {
    switch (j) {
      case -2:
      case -1:
        return SuperDim{0, 0};
      case 0:
        return SuperDim{g, 0};
      case 1:
        return SuperDim{1, n_r / 2};
      default:
        break;
    }
  }
  throw precondition_violated_error("j must be one of -2, -1, 0, 1");
}

SuperDim moduli_dim(long long g, long long n_ns, long long n_r) {
  if (g < 2) throw precondition_violated_error("moduli dimension needs genus >= 2");
  if (n_ns < 0 || n_r < 0)
    throw precondition_violated_error("puncture counts must be non-negative");
  if (n_r % 2 != 0)
    throw odd_ramond_count_error("the number of Ramond punctures must be even");
  return SuperDim{3 * g - 3 + n_ns + n_r, 2 * g - 2 + n_ns + n_r / 2};
}

}  // namespace smf
