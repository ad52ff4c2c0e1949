#include "kmforge/freelie.hpp"

#include <algorithm>

namespace kmforge {

std::string word_str(const Word &w)
{
	std::string s;
	for (size_t k = 0; k < w.size(); ++k)
	{
		if (k)
			s += ' ';
		s += std::to_string((int)w[k] + 1);
	}
	return s;
}

RootVec content(const Word &w, int rank)
{
	RootVec c(rank, 0);
	for (char x : w)
		c[(int)x]++;
	return c;
}

bool is_lyndon(const Word &w)
{
	if (w.empty())
		return false;
	for (size_t k = 1; k < w.size(); ++k)
		if (!(w < w.substr(k) + w.substr(0, k)))
			return false;
	return true;
}

std::pair<Word, Word> standard_factorization(const Word &w)
{
	for (size_t k = 1; k < w.size(); ++k)
	{
		Word v = w.substr(k);
		if (is_lyndon(v))
			return {w.substr(0, k), v};
	}
	return {w, Word()};
}

Int lyndon_count(const RootVec &c)
{
	int n = height(c);
	if (n == 0)
		return 0;
	int g = 0;
	for (int x : c)
		g = (int)gcd_l(g, x);
	Int total = 0;
	for (int d = 1; d <= g; ++d)
	{
		if (g % d)
			continue;
		int mu = mobius(d);
		if (!mu)
			continue;
		Int m = factorial(n / d);
		for (int x : c)
			m /= factorial(x / d);
		total += mu * m;
	}
	return total / n;
}

std::vector<Word> FreeLie::lyndon_words(const RootVec &c) const
{
	Word w;
	for (int i = 0; i < (int)c.size(); ++i)
		w += std::string(c[i], (char)i);
	std::vector<Word> out;
	if (w.empty())
		return out;
	std::sort(w.begin(), w.end());
	do
	{
		if (is_lyndon(w))
			out.push_back(w);
	} while (std::next_permutation(w.begin(), w.end()));
	return out;
}

static void add_into(LieVec &acc, const LieVec &x, const Int &c)
{
	for (auto &[w, v] : x)
	{
		Int &slot = acc[w];
		slot += c * v;
		if (slot == 0)
			acc.erase(w);
	}
}

void add_into(LieVecQ &acc, const LieVecQ &x, const Rat &c)
{
	for (auto &[w, v] : x)
	{
		Rat &slot = acc[w];
		slot += c * v;
		if (slot == 0)
			acc.erase(w);
	}
}

LieVec FreeLie::bracket(const Word &a, const Word &b)
{
	if (a == b)
		return {};
	if (a > b)
	{
		LieVec r = bracket(b, a);
		for (auto &[w, v] : r)
			v = -v;
		return r;
	}
	{
		std::lock_guard<std::mutex> lk(mu_);
		auto it = memo_.find({a, b});
		if (it != memo_.end())
			return it->second;
	}
	LieVec r = bracket_sorted(a, b);
	std::lock_guard<std::mutex> lk(mu_);
	memo_.emplace(std::make_pair(a, b), r);
	return r;
}

LieVec FreeLie::bracket_sorted(const Word &a, const Word &b)
{
	if (a.size() == 1)
		return {{a + b, 1}};
	auto [a1, a2] = standard_factorization(a);
	if (a2 >= b)
		return {{a + b, 1}};
	// [[a1,a2],b] = [a1,[a2,b]] - [a2,[a1,b]]
	LieVec out;
	for (auto &[w, c] : bracket(a2, b))
		add_into(out, bracket(a1, w), c);
	for (auto &[w, c] : bracket(a1, b))
		add_into(out, bracket(a2, w), -c);
	return out;
}

LieVecQ FreeLie::bracket(const LieVecQ &x, const LieVecQ &y)
{
	LieVecQ out;
	for (auto &[u, cu] : x)
		for (auto &[v, cv] : y)
			for (auto &[w, c] : bracket(u, v))
			{
				Rat &slot = out[w];
				slot += cu * cv * Rat(c);
				if (slot == 0)
					out.erase(w);
			}
	return out;
}

LieVecQ FreeLie::bracket(const Word &a, const LieVecQ &y) { return bracket(LieVecQ{{a, 1}}, y); }

std::map<Word, Int> FreeLie::expand(const Word &w)
{
	{
		std::lock_guard<std::mutex> lk(mu_);
		auto it = expand_memo_.find(w);
		if (it != expand_memo_.end())
			return it->second;
	}
	std::map<Word, Int> out;
	if (w.size() == 1)
		out[w] = 1;
	else
	{
		auto [u, v] = standard_factorization(w);
		auto pu = expand(u), pv = expand(v);
		for (auto &[x, cx] : pu)
			for (auto &[y, cy] : pv)
			{
				out[x + y] += cx * cy;
				out[y + x] -= cx * cy;
			}
		for (auto it = out.begin(); it != out.end();)
			it = it->second == 0 ? out.erase(it) : std::next(it);
	}
	std::lock_guard<std::mutex> lk(mu_);
	expand_memo_.emplace(w, out);
	return out;
}

} // namespace kmforge
