#pragma once

#include "kmforge/enveloping.hpp"
#include "kmforge/groupquot.hpp"

#include <map>
#include <string>
#include <vector>

namespace kmforge {

enum class MapKind
{
	Surjection,
	Subsystem,
	Cover
};
std::string to_string(MapKind k);

struct GradedLatticeMap
{
	MapKind kind = MapKind::Surjection;
	GCM source, target;
	std::vector<int> image_index;  // Surjection: target index of each source index, -1 if dropped
	std::vector<RootVec> betas;    // Subsystem: image degrees
	CoverSpec cover;               // Cover
	std::vector<RootVec> pi_bar;   // image of each simple root in Q(target)

	RootVec apply_degree(const RootVec &a) const;
	// smallest target height covering the images of all source degrees <= n
	int target_height(int n) const;
};

// embedding: target (B) index -> source (A) index
GradedLatticeMap make_pi_AB(const GCM &A, const GCM &B, const std::vector<int> &embedding);
GradedLatticeMap make_pi_AB(const GCM &A, const GCM &B);

struct SubsystemResult
{
	GCM A;
	GradedLatticeMap map;
	int certified_to_height = 0;  // differences checked against roots up to this height
};
SubsystemResult make_subsystem_map(const GCM &B, const std::vector<RootVec> &betas);

GradedLatticeMap make_cover_map(const GCM &A);

struct FunnyStep
{
	Int a, next;
	Int pairing12, pairing21;  // <beta_1, beta_2^vee>, <beta_2, beta_1^vee>
	bool certified = false;
};
struct FunnyChain
{
	std::vector<Int> values;
	std::vector<FunnyStep> steps;
};
FunnyChain funny_chain(const Int &a, int steps);

// Lie extension of the generator images, evaluated in a target band context
class LieMap
{
  public:
	LieMap(const GradedLatticeMap &m, BandContext &target);

	const GradedLatticeMap &map() const { return m_; }
	LieElement generator_image(int i);
	LieElement image_of_word(const Word &w);
	LieElement apply(BandContext &source, const LieElement &x);
	// (ad e_i)^{1 + |a_ij|} e_j pushed forward
	LieElement serre_image(int i, int j);

  private:
	const GradedLatticeMap &m_;
	BandContext &B_;
	std::map<Word, LieElement> memo_;
};

LieElement apply_lie(const GradedLatticeMap &m, BandContext &ctxA, BandContext &ctxB, const LieElement &x);

// monomial-wise push-forward; requires UB.N() <= UA.N()
EnvElement apply_group(const GradedLatticeMap &m, TruncCtx &UA, TruncCtx &UB, const EnvElement &g);

struct DegreeRank
{
	RootVec degree;
	int target_dim = 0;
	int image_rank = 0;
};
struct SurjectivityReport
{
	std::vector<DegreeRank> degrees;
	bool full = true;
};
SurjectivityReport surjectivity_report(const GradedLatticeMap &m, BandContext &ctxA, BandContext &ctxB);

struct KilledRoot
{
	RootVec root;
	RootVec image;
	bool form_certificate = false;
	Rat form_source = 0, form_target = 0;
	bool zero_certificate = false;
};
std::vector<KilledRoot> kernel_detect(const GradedLatticeMap &m, BandContext &ctxA, BandContext &ctxB);

struct MinimalImageOrders
{
	size_t image_order = 0;           // closure of the pushed-forward real root groups
	size_t target_minimal_order = 0;  // closure of the target real root groups
	size_t target_full_order = 0;
};
MinimalImageOrders minimal_image_orders(const GradedLatticeMap &m, uint32_t p, int N);

} // namespace kmforge
