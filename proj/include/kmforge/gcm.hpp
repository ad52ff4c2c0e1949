#pragma once

#include "kmforge/arith.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kmforge {

// A validated generalised Cartan matrix. Entries are kept exactly; the
// engines read them through at(), which requires them to fit in a long.
class GCM
{
  public:
	GCM() = default;

	int rank() const { return (int)labels_.size(); }
	const std::vector<std::string> &labels() const { return labels_; }
	const Int &entry(int i, int j) const { return a_[i][j]; }
	long at(int i, int j) const;
	const std::vector<std::vector<Int>> &matrix() const { return a_; }

	bool is_symmetric() const;
	bool is_simply_laced() const;
	// connected components of the Dynkin diagram
	std::vector<std::vector<int>> components() const;
	bool indecomposable() const { return components().size() == 1; }
	GCM principal(const std::vector<int> &idx) const;
	int index_of(const std::string &label) const;

	bool operator==(const GCM &o) const { return a_ == o.a_; }

	friend GCM validate_gcm(const std::vector<std::vector<Int>> &m, std::vector<std::string> labels);

  private:
	std::vector<std::string> labels_;
	std::vector<std::vector<Int>> a_;
	std::vector<std::vector<long>> small_;
	bool fits_ = true;
};

// Throws Error with code DiagonalNotTwo, PositiveOffDiagonal, AsymmetricZero
// or InvalidInput (not square).
GCM validate_gcm(const std::vector<std::vector<Int>> &m, std::vector<std::string> labels = {});
GCM make_gcm(const std::vector<std::vector<long>> &m);

// b_ij >= a_{e(i)e(j)}, i.e. |b_ij| <= |a_{e(i)e(j)}|; see README for the
// orientation of the order.
bool gcm_leq(const GCM &B, const GCM &A, const std::vector<int> &embedding);
bool gcm_leq(const GCM &B, const GCM &A);

enum class KacType
{
	Finite,
	Affine,
	Indefinite
};
std::string to_string(KacType t);

Rat determinant(const std::vector<std::vector<Rat>> &m);
Rat principal_minor(const GCM &A, const std::vector<int> &idx);

KacType classify_type(const GCM &A);
bool is_compact_hyperbolic(const GCM &A);

struct AffineSub
{
	std::vector<int> subset;  // indices of A, increasing
	GCM B;                    // indexed by subset
};
std::optional<AffineSub> find_affine_sub(const GCM &A);

std::optional<std::vector<long>> symmetrizer(const GCM &A);
long m_A(const GCM &A);

struct CoverSpec
{
	std::vector<long> block_sizes;
	// vertices ordered block by block; vertex v is (block_of[v], slot_of[v])
	std::vector<int> block_of;
	std::vector<int> slot_of;
	std::set<std::pair<int, int>> edges;  // v < w
	GCM cover_gcm;
	std::string construction;  // "circulant" or "stub"

	int vertex(int i, int r) const;
	std::vector<int> block(int i) const;
};

CoverSpec simply_laced_cover(const GCM &A);
// Checks both CoverSpec invariants against A; returns an empty string when they
// hold and a description of the first violation otherwise.
std::string check_cover(const GCM &A, const CoverSpec &c);

} // namespace kmforge
