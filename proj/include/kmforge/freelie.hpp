#pragma once

#include "kmforge/arith.hpp"
#include "kmforge/roots.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace kmforge {

// Letters are the raw char values 0..rank-1, so std::string comparison is the
// lexicographic order on words (a proper prefix is smaller).
using Word = std::string;
using LieVec = std::map<Word, Int>;   // Lyndon coordinates, integral
using LieVecQ = std::map<Word, Rat>;  // Lyndon coordinates, rational

std::string word_str(const Word &w);  // "1 2 2" style, 1-based
RootVec content(const Word &w, int rank);

bool is_lyndon(const Word &w);
// (u, v) with v the longest proper Lyndon suffix of w
std::pair<Word, Word> standard_factorization(const Word &w);

// number of Lyndon words of the given content (multigraded necklace count)
Int lyndon_count(const RootVec &content);

class FreeLie
{
  public:
	explicit FreeLie(int rank) : rank_(rank) {}
	int rank() const { return rank_; }

	// sorted Lyndon words with the given letter content
	std::vector<Word> lyndon_words(const RootVec &content) const;

	// [P_a, P_b] in the Lyndon basis
	LieVec bracket(const Word &a, const Word &b);
	LieVecQ bracket(const LieVecQ &x, const LieVecQ &y);
	LieVecQ bracket(const Word &a, const LieVecQ &y);

	// expansion of P_w in the free associative algebra
	std::map<Word, Int> expand(const Word &w);

  private:
	LieVec bracket_sorted(const Word &a, const Word &b);

	int rank_;
	std::mutex mu_;
	std::map<std::pair<Word, Word>, LieVec> memo_;
	std::map<Word, std::map<Word, Int>> expand_memo_;
};

void add_into(LieVecQ &acc, const LieVecQ &x, const Rat &c);

} // namespace kmforge
