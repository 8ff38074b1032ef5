#include "trajmine/anonymize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "trajmine/errors.hpp"

namespace trajmine {

namespace {

std::string where(const RawTrajectory& t, std::size_t term) {
    return "trajectory '" + t.id + "' term " + std::to_string(term);
}

} // namespace

std::vector<AnonymousTrajectory> toy_anonymize(const std::vector<RawTrajectory>& raw,
                                               const AnonymizeConfig& config) {
    if (config.k_anon < 1 || config.l_div < 1)
        throw std::invalid_argument("k_anon and l_div must be at least 1");
    for (const auto& t : raw) {
        if (t.id.empty()) throw std::invalid_argument("raw trajectory with empty id");
        if (t.terms.empty()) throw std::invalid_argument("raw trajectory '" + t.id + "' has no terms");
        for (const auto& term : t.terms)
            if (term.activities.empty())
                throw std::invalid_argument("raw trajectory '" + t.id + "' has a term without activities");
    }

    std::size_t max_len = 0;
    for (const auto& t : raw) max_len = std::max(max_len, t.terms.size());

    std::vector<Activity> alphabet;
    for (const auto& t : raw)
        for (const auto& term : t.terms)
            alphabet.insert(alphabet.end(), term.activities.begin(), term.activities.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    std::mt19937_64 rng(config.seed);

    std::vector<AnonymousTrajectory> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i].id = raw[i].id;

    for (std::size_t t = 0; t < max_len; ++t) {
        // pool of trajectories long enough to have a t-th term
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < raw.size(); ++i)
            if (t < raw[i].terms.size()) pool.push_back(i);

        // one tie-break ranking per term index keeps the result seed-stable
        std::vector<std::size_t> tie(pool.size());
        for (std::size_t i = 0; i < tie.size(); ++i) tie[i] = i;
        std::shuffle(tie.begin(), tie.end(), rng);

        std::vector<Activity> term_pool; // all activities seen at this term index
        for (std::size_t i : pool) {
            const auto& acts = raw[i].terms[t].activities;
            term_pool.insert(term_pool.end(), acts.begin(), acts.end());
        }
        std::sort(term_pool.begin(), term_pool.end());
        term_pool.erase(std::unique(term_pool.begin(), term_pool.end()), term_pool.end());

        for (std::size_t pi = 0; pi < pool.size(); ++pi) {
            std::size_t self = pool[pi];
            const RawTerm& own = raw[self].terms[t];

            std::vector<std::size_t> order(pool.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const RawTerm& ta = raw[pool[a]].terms[t];
                const RawTerm& tb = raw[pool[b]].terms[t];
                double da = (ta.x - own.x) * (ta.x - own.x) + (ta.y - own.y) * (ta.y - own.y);
                double db = (tb.x - own.x) * (tb.x - own.x) + (tb.y - own.y) * (tb.y - own.y);
                if (da != db) return da < db;
                return tie[a] < tie[b];
            });

            // take nearest members until the box covers k_anon distinct points
            std::set<std::pair<double, double>> distinct;
            std::vector<std::size_t> group;
            for (std::size_t oi : order) {
                const RawTerm& cand = raw[pool[oi]].terms[t];
                group.push_back(oi);
                distinct.insert({cand.x, cand.y});
                if (distinct.size() >= static_cast<std::size_t>(config.k_anon)) break;
            }
            if (distinct.size() < static_cast<std::size_t>(config.k_anon))
                throw InfeasibleError("cannot reach k=" + std::to_string(config.k_anon) + " at " +
                                      where(raw[self], t) + ": only " +
                                      std::to_string(distinct.size()) + " distinct locations");

            double xmin = own.x, xmax = own.x, ymin = own.y, ymax = own.y;
            std::set<Activity> acts(own.activities.begin(), own.activities.end());
            for (std::size_t oi : group) {
                const RawTerm& m = raw[pool[oi]].terms[t];
                xmin = std::min(xmin, m.x);
                xmax = std::max(xmax, m.x);
                ymin = std::min(ymin, m.y);
                ymax = std::max(ymax, m.y);
                acts.insert(m.activities.begin(), m.activities.end());
            }
            if (xmax - xmin < config.inflate) {
                double pad = (config.inflate - (xmax - xmin)) / 2;
                xmin -= pad;
                xmax += pad;
            }
            if (ymax - ymin < config.inflate) {
                double pad = (config.inflate - (ymax - ymin)) / 2;
                ymin -= pad;
                ymax += pad;
            }

            for (const auto& a : term_pool) {
                if (acts.size() >= static_cast<std::size_t>(config.l_div)) break;
                acts.insert(a);
            }
            for (const auto& a : alphabet) {
                if (acts.size() >= static_cast<std::size_t>(config.l_div)) break;
                acts.insert(a);
            }
            if (acts.size() < static_cast<std::size_t>(config.l_div))
                throw InfeasibleError("cannot reach l=" + std::to_string(config.l_div) + " at " +
                                      where(raw[self], t) + ": only " +
                                      std::to_string(acts.size()) + " activities exist");

            AnonymousTerm at;
            at.mbr = Box::from_doubles(xmin, ymin, xmax, ymax);
            at.activities.assign(acts.begin(), acts.end());
            out[self].terms.push_back(std::move(at));
        }
    }

    for (const auto& a : out) validate(a);
    return out;
}

void validate_anonymization(const std::vector<RawTrajectory>& raw,
                            const std::vector<AnonymousTrajectory>& anon, int k_anon, int l_div) {
    if (raw.size() != anon.size())
        throw InfeasibleError("anonymized set has a different trajectory count");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].id != anon[i].id)
            throw InfeasibleError("trajectory order changed: '" + raw[i].id + "' vs '" +
                                  anon[i].id + "'");
        if (raw[i].terms.size() != anon[i].terms.size())
            throw InfeasibleError("trajectory '" + raw[i].id + "' changed length");
        for (std::size_t t = 0; t < raw[i].terms.size(); ++t) {
            const RawTerm& own = raw[i].terms[t];
            const AnonymousTerm& at = anon[i].terms[t];
            Rational x = Rational::from_double(own.x), y = Rational::from_double(own.y);
            if (x < at.mbr.xmin || x > at.mbr.xmax || y < at.mbr.ymin || y > at.mbr.ymax)
                throw InfeasibleError("own location outside the MBR at " + where(raw[i], t));
            std::set<std::pair<double, double>> covered;
            for (const auto& other : raw) {
                if (t >= other.terms.size()) continue;
                Rational ox = Rational::from_double(other.terms[t].x);
                Rational oy = Rational::from_double(other.terms[t].y);
                if (ox >= at.mbr.xmin && ox <= at.mbr.xmax && oy >= at.mbr.ymin &&
                    oy <= at.mbr.ymax)
                    covered.insert({other.terms[t].x, other.terms[t].y});
            }
            if (covered.size() < static_cast<std::size_t>(k_anon))
                throw InfeasibleError("MBR covers only " + std::to_string(covered.size()) +
                                      " distinct locations at " + where(raw[i], t));
            for (const auto& a : own.activities)
                if (!std::binary_search(at.activities.begin(), at.activities.end(), a))
                    throw InfeasibleError("own activity '" + a + "' dropped at " + where(raw[i], t));
            std::set<Activity> distinct(at.activities.begin(), at.activities.end());
            if (distinct.size() < static_cast<std::size_t>(l_div))
                throw InfeasibleError("only " + std::to_string(distinct.size()) +
                                      " distinct activities at " + where(raw[i], t));
        }
    }
}

} // namespace trajmine
