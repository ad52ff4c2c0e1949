#pragma once

#include "kmforge/gcm.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kmforge {

class BandContext;

using RootVec = std::vector<int>;
using CorootVec = std::vector<int>;

int height(const RootVec &a);
bool is_positive(const RootVec &a);
RootVec simple_root(int rank, int i);
RootVec add(const RootVec &a, const RootVec &b);
RootVec sub(const RootVec &a, const RootVec &b);
RootVec scale(const RootVec &a, int k);
bool leq(const RootVec &a, const RootVec &b);  // componentwise
std::string root_str(const RootVec &a);

// Canonical order on degrees: height first, then lexicographically
// decreasing coefficient vectors (so alpha_1 precedes alpha_2).
bool degree_less(const RootVec &a, const RootVec &b);
struct DegreeLess
{
	bool operator()(const RootVec &a, const RootVec &b) const { return degree_less(a, b); }
};

long pairing(const GCM &A, const RootVec &alpha, const CorootVec &h);
RootVec reflect_root(const GCM &A, int i, const RootVec &alpha);
CorootVec reflect_coroot(const GCM &A, int i, const CorootVec &h);

// exact variants used when coefficients outgrow machine integers
using BigRootVec = std::vector<Int>;
Int pairing_big(const GCM &A, const BigRootVec &alpha, const BigRootVec &h);
BigRootVec reflect_root_big(const GCM &A, int i, const BigRootVec &alpha);
BigRootVec reflect_coroot_big(const GCM &A, int i, const BigRootVec &h);

enum class RootKind
{
	Real,
	Imaginary,
	NotRoot
};
std::string to_string(RootKind k);

// Weyl descent: repeatedly apply the reflection of least index that strictly
// lowers the height. Ends at a simple root (Real), at a vector with connected
// support pairing nonpositively with every coroot (Imaginary), or elsewhere
// (NotRoot).
struct Descent
{
	RootKind kind = RootKind::NotRoot;
	std::vector<int> word;  // reflections in the order applied
	int terminal = -1;      // simple index reached, Real only
	RootVec end;
};
Descent descend(const GCM &A, const RootVec &alpha);

struct RootEntry
{
	long mult = 0;
	RootKind kind = RootKind::Imaginary;
	std::vector<int> descent_word;
	int terminal = -1;
};

struct RootTable
{
	GCM gcm;
	int max_height = 0;
	std::map<RootVec, RootEntry, DegreeLess> entries;

	bool contains(const RootVec &a) const { return entries.count(a) > 0; }
	const RootEntry &at(const RootVec &a) const;
	bool is_real(const RootVec &a) const;
	std::vector<RootVec> real_roots() const;
};

RootTable enumerate_roots(const GCM &A, int max_height);
RootTable enumerate_roots(BandContext &ctx, int max_height);

CorootVec coroot_of_real(const GCM &A, const RootVec &alpha, const RootTable &table);

std::optional<Rat> sym_form(const GCM &A, const RootVec &a, const RootVec &b);
Rat sym_form(const GCM &A, const std::vector<long> &d, const RootVec &a, const RootVec &b);

struct BoundedVerdict
{
	bool value = false;
	int certified_to_height = 0;
};
BoundedVerdict is_closed_set(const RootTable &t, const std::vector<RootVec> &psi);
BoundedVerdict is_root_ideal(const RootTable &t, const std::vector<RootVec> &psi);

struct Interval
{
	std::vector<RootVec> roots;  // canonical order
	std::vector<std::pair<int, int>> coeffs;  // (i,j) with root = i*alpha + j*beta
	std::string reason;  // empty when found, else Unbounded or BoundReached
	bool ok() const { return reason.empty(); }
};
Interval prenilpotent_interval(const RootTable &t, const RootVec &alpha, const RootVec &beta);

} // namespace kmforge
