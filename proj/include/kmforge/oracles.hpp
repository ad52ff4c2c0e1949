#pragma once

#include "kmforge/enveloping.hpp"

#include <string>
#include <vector>

namespace kmforge {

// number of Lyndon words of length n over r letters
Int witt_dim(long r, long n);

// multiplicity of alpha via the Peterson recursion
long peterson_mult(const GCM &A, const RootVec &alpha);

class PetersonTable
{
  public:
	explicit PetersonTable(const GCM &A);
	long mult(const RootVec &alpha);

  private:
	Rat c(const RootVec &beta);
	Rat form(const RootVec &a, const RootVec &b) const;

	GCM A_;
	std::vector<long> d_;
	std::map<RootVec, Rat> c_;
	std::map<RootVec, long> mult_;
};

struct CensusReport
{
	size_t candidates = 0;
	size_t grouplike = 0;
	size_t expected = 0;  // |k|^(sum of dims)
	bool bijective = false;
	std::vector<EnvElement> elements;
};
CensusReport grouplike_census(TruncCtx &ctx, size_t cap = 1000000);

struct OracleReport
{
	std::string name;
	std::vector<std::string> rows;
	bool pass = true;
};

} // namespace kmforge
