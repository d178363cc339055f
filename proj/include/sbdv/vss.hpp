#pragma once

#include <vector>

#include "sbdv/idkgc.hpp"

namespace sbdv {

// (t, n) Feldman sharing among the proxy group. Party indices run 1..n;
// the dealt secret sits at x = 0 and is never evaluated for delivery.

struct DealerPolynomial {
    int dealer = 0;
    int n = 0;
    std::vector<Scalar> coeffs;  // size t; coeffs[l] multiplies x^l
};

struct FeldmanCommitments {
    int dealer = 0;
    std::vector<G1Elem> a;  // a[l] = coeffs[l] * P
};

struct SubShare {
    int dealer = 0;
    int recipient = 0;
    Scalar value;  // f_dealer(recipient)
};

struct SecretShare {
    int holder = 0;
    Scalar r;   // sum of the n subshares received
    G1Elem u;   // r * P, published
};

std::pair<DealerPolynomial, FeldmanCommitments> deal(const SystemParams& params, int t, int n,
                                                     int dealer, ScalarRng& rng);
std::pair<DealerPolynomial, FeldmanCommitments> deal(const SystemParams& params, int t, int n,
                                                     int dealer, const Bytes& seed);

SubShare subshare(const SystemParams& params, const DealerPolynomial& poly, int j);

bool verify_subshare(const SystemParams& params, const SubShare& share,
                     const FeldmanCommitments& commitments);

/// Requires one accepted subshare from each of the n dealers, all addressed
/// to `holder`.
SecretShare combine_shares(const SystemParams& params, int holder,
                           const std::vector<SubShare>& shares);

}  // namespace sbdv
