#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "outspace/counting.hpp"
#include "outspace/covers.hpp"
#include "outspace/endomorphism.hpp"
#include "outspace/marked_graph.hpp"

namespace outspace {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Generating set used for Nielsen word lengths.
//   transvections: a_i -> a_i a_j^±, a_i -> a_j^± a_i, a_i -> a_i^-1
//   classical:     the same plus transpositions of two basis letters
enum class NielsenSet { transvections, classical };

const char* nielsen_set_name(NielsenSet s);
NielsenSet parse_nielsen_set(const std::string& s);

struct WitnessParams {
  enum class Case { connected = 1, two_component = 2, multi_component = 3 };
  Case kind = Case::connected;
  int n = 0;
  int r = 0;               // connected: rank of A
  std::vector<int> ranks;  // two/multi component: ranks of A_0, A_1, ...

  static WitnessParams connected(int n, int r);
  static WitnessParams two_component(int n, int rank0, int rank1);
  static WitnessParams multi_component(int n, std::vector<int> ranks);

  void validate() const;
  // rank of the rose carrying the train track map
  int m() const { return kind == Case::connected ? r + 1 : ranks[0] + ranks[1]; }
  // two/multi component: number of petals of H'_2
  int spare() const { return n - m(); }
  int coindex() const;
};

// Theta(a1) = a1 a_m, Theta(a_i) = a_{i-1} for 2 <= i <= m, identity above m.
Automorphism theta(int n, int m);
Automorphism theta_inverse(int n, int m);
// explicit word for theta in the given set; product(n, word) == theta(n, m)
std::vector<NielsenMove> theta_word(int n, int m, NielsenSet set);

// Theta^k(a1); cancellations made while substituting are added to *cancellations.
Word u_k(int n, int m, int k, std::size_t* cancellations = nullptr);

// M[i][j] = number of occurrences of a_{i+1} in Theta(a_{j+1}), restricted to the first m letters.
struct TransitionMatrix {
  std::vector<std::vector<BigInt>> a;

  static TransitionMatrix of(const Endomorphism& f, int m);
  static TransitionMatrix identity(int m);
  int size() const { return static_cast<int>(a.size()); }
  TransitionMatrix operator*(const TransitionMatrix& o) const;
  TransitionMatrix power(int k) const;
  std::vector<BigInt> column_sums() const;
};

// occurrences of a_j in Theta^k(a1), from matrix powers
BigInt occurrence_count(int m, int j, int k);
// two-letter subwords of Theta^k(a1) switching between a_1..a_p and a_{p+1}..a_m
BigInt transition_count(int m, int p, int k);
BigInt transition_count_direct(const Word& u, int p);

// i_{k+1} / i_k with i_k = occurrence_count(2, 2, k)
BigRational growth_ratio(int k);
// |x - golden ratio| < eps, decided exactly
bool near_golden(const BigRational& x, const BigRational& eps);

// Stallings-graph free realisation of the two-component witnesses.
struct Case2Complex {
  WitnessParams params;
  MarkedGraph Gp;  // G'
  MarkedGraph G;   // G' / eta'_0
  int eta0 = -1, eta1 = -1;
  int v0 = -1, v1 = -1, v2 = -1;
  std::vector<int> H0, H1, H2;  // petal edges of G'
  int l0 = -1, l1 = -1;         // petals used in sigma'

  // u'_k by the insertion rules; checked against the reduced expansion of u_k
  EdgePath u_prime(int k) const;
  EdgePath sigma_prime() const;
  // rho' eta'_1 u'_k sigma' u'_k^-1 eta'_1^-1, at v'_2; checked to be cyclically reduced
  EdgePath gamma_prime(int k) const;
  // edge occurrences of eta'_0 in a path
  long long eta0_count(const EdgePath& p) const;
};

Case2Complex case2_build(const WitnessParams& params);

// a_{letter} generators of the components of the stabilised system
FreeFactorSystem witness_system(const WitnessParams& params);
std::vector<Word> witness_B(const WitnessParams& params);

// phi_0 as a Nielsen word; phi_0(a_n) = a_n a_1 (connected) or conjugation of H_2 letters by a1
std::vector<NielsenMove> phi0_word(const WitnessParams& params);
Automorphism phi_k(const WitnessParams& params, int k);
// theta^k phi_0 theta^-k, composed; phi_k checks it against the direct form
Automorphism phi_k_factored(const WitnessParams& params, int k);
long long nielsen_upper_bound(const WitnessParams& params, int k, NielsenSet set);

struct WitnessSetup {
  MarkedGraph G0;
  FreeFactorSystem A;
  std::vector<Word> B;
  Word c0;
};

WitnessSetup witness_setup(const WitnessParams& params);
Word witness_class(const WitnessParams& params, int k);  // a representative of phi_k(c_0)

struct ReportRow {
  int k = 0;
  long long upper_nielsen = 0;
  long long i_k = 0;
  long long spine_lb = 0;  // ceil(|i_k - i_0| / 2)
};

struct DistortionReport {
  WitnessParams params;
  NielsenSet set = NielsenSet::transvections;
  long long i_0 = 0;
  std::vector<ReportRow> rows;

  std::string csv() const;
  // least k* such that spine_lb >= upper_nielsen for every row with k >= k*; -1 if none
  int crossover() const;
};

DistortionReport distortion_report(const WitnessParams& params, int k_max, NielsenSet set = NielsenSet::transvections);

}  // namespace outspace
