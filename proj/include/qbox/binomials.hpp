#pragma once

/*
 * Exact binomial coefficients and truncation tail bounds for the square-root
 * series used throughout the moment machinery.
 *
 * The expansions rest on two families of coefficients,
 *
 *   binom(1/2, k)   -- from  sqrt(t)     = sum_k (-1)^k binom(1/2,k)  (1-t)^k
 *   binom(-1/2, k)  -- from  1/sqrt(t)   = sum_k (-1)^k binom(-1/2,k) (1-t)^k
 *
 * and the derived coefficients
 *
 *   c(n, k) = (-1)^k binom(-1/2, k) - (-1)^(k-n) binom(-1/2, k-n),
 *
 * all of which are dyadic rationals.  They are computed with exact integer
 * arithmetic and converted to double only at the boundary, so the inevitable
 * cancellation in c(n, k) (a difference of nearly equal positive terms for
 * large k) costs nothing.
 *
 * Tail bounds.  For |x| <= 1 the remainder of the sqrt series after the
 * k = K term satisfies
 *
 *   sum_{k > K} |binom(1/2, k)| = binom(2K, K) / 4^K  =: tail_bound(K),
 *
 * a consequence of sum_{k >= 1} |binom(1/2, k)| = 1 and telescoping of the
 * partial sums.  Similarly c_tail_bound(n, K) = sum_{k >= K} |c(n, k)|, which
 * telescopes to a short sum of central-binomial terms.
 */

#include <cstdint>

namespace qbox {

// binom(n, k) for integers 0 <= k, n <= 128; 0 when k > n or k < 0.
double binom(int n, int k);

// binom(1/2, k): 1, 1/2, -1/8, 1/16, -5/128, ...
double half_binom(int k);

// binom(-1/2, k): 1, -1/2, 3/8, -5/16, 35/128, ...
double neg_half_binom(int k);

// c(n, k) as defined above; c(0, k) == 0 for all k.
double c_coeff(int n, int k);

// sum_{k > K} |binom(1/2, k)|  ==  binom(2K, K) / 4^K, for K >= 0.
double tail_bound(int K);

// sum_{k >= K} |c(n, k)|, for n >= 0, K >= 0.  Zero when n == 0.
double c_tail_bound(int n, int K);

}  // namespace qbox
