#include "lmcts/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "lmcts/core/error.hpp"

namespace lmcts {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

void EnvConfig::validate() const
{
    if (kind == "dataset") {
        if (path.empty()) {
            throw ConfigError("env.path: required for the dataset kind");
        }
        if (!spec.empty() && !declared_spec(spec)) {
            throw ConfigError("env.spec: unknown dataset '" + spec + "'");
        }
        if (label_base != 0 && label_base != 1) {
            throw ConfigError("env.label_base: must be 0 or 1");
        }
        return;
    }
    parse_synthetic_kind(kind);
    if (dim == 0) {
        throw ConfigError("env.d: must be at least 1");
    }
    if (arms == 0) {
        throw ConfigError("env.arms: must be at least 1");
    }
    if (!std::isfinite(noise_variance)) {
        throw ConfigError("env.noise: must be finite");
    }
}

EnvFactory::EnvFactory(EnvConfig cfg) : cfg_(std::move(cfg))
{
    cfg_.validate();
    if (cfg_.kind == "dataset") {
        DatasetFormat fmt;
        fmt.delimiter = cfg_.delimiter;
        fmt.header = cfg_.header;
        fmt.label_base = cfg_.label_base;
        fmt.normalize = cfg_.normalize;
        fmt.classes = cfg_.classes;
        if (!cfg_.spec.empty()) {
            fmt.expect = declared_spec(cfg_.spec);
        }
        data_ = load_dataset(cfg_.path, fmt);
        dim_ = data_->context_dim();
    } else {
        dim_ = cfg_.dim;
    }
}

std::unique_ptr<Environment> EnvFactory::make(std::uint64_t seed) const
{
    if (data_) {
        return std::make_unique<DatasetEnv>(data_, seed, cfg_.wrap);
    }
    SyntheticConfig sc;
    sc.kind = parse_synthetic_kind(cfg_.kind);
    sc.dim = cfg_.dim;
    sc.arm_count = cfg_.arms;
    sc.changing_arms = cfg_.changing;
    sc.noise_variance = cfg_.noise_variance;
    return std::make_unique<SyntheticEnv>(sc, seed);
}

RunRecord run_one(const AgentConfig& agent_cfg, const EnvFactory& env_factory, std::size_t horizon,
                  std::uint64_t seed)
{
    if (horizon == 0) {
        throw InvalidInput("run: T must be at least 1");
    }
    auto env = env_factory.make(seed);
    auto agent = make_agent(agent_cfg, env->dim(), horizon, seed);

    RunRecord rec;
    rec.seed = seed;
    rec.requested_rounds = horizon;
    rec.cache_policy = agent->cache_policy();
    for (auto* v : {&rec.reward, &rec.regret, &rec.cum_regret, &rec.select_s, &rec.update_s}) {
        v->reserve(horizon);
    }
    rec.chosen.reserve(horizon);

    double cum = 0.0;
    std::size_t t = 1;
    try {
        for (; t <= horizon; ++t) {
            std::optional<ArmSet> arms = env->arms(t);
            if (!arms) {
                rec.truncated = true;
                break;
            }
            auto start = Clock::now();
            const std::size_t idx = agent->select(*arms);
            rec.select_s.push_back(seconds_since(start));

            const RoundOutcome out = env->pull(*arms, idx);

            start = Clock::now();
            agent->update(arms->row(idx), out.reward);
            rec.update_s.push_back(seconds_since(start));

            cum += out.regret;
            rec.chosen.push_back(idx);
            rec.reward.push_back(out.reward);
            rec.regret.push_back(out.regret);
            rec.cum_regret.push_back(cum);
        }
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "seed " << seed << ", round " << t << ": " << e.what();
        throw RunFailure(msg.str());
    }
    return rec;
}

Aggregate aggregate(const std::vector<RunRecord>& records)
{
    if (records.empty()) {
        throw InvalidInput("aggregate: no records");
    }
    std::size_t len = records.front().rounds();
    for (const auto& r : records) {
        len = std::min(len, r.rounds());
    }
    Aggregate agg;
    agg.n = records.size();
    agg.mean.assign(len, 0.0);
    agg.std_error.assign(len, 0.0);
    const double n = static_cast<double>(agg.n);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const auto& r : records) {
            sum += r.cum_regret[t];
        }
        const double mean = sum / n;
        agg.mean[t] = mean;
        if (agg.n > 1) {
            double ss = 0.0;
            for (const auto& r : records) {
                const double dev = r.cum_regret[t] - mean;
                ss += dev * dev;
            }
            agg.std_error[t] = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
        }
    }
    return agg;
}

BatchResult run_many(const AgentConfig& agent, const EnvFactory& env, std::size_t horizon,
                     const std::vector<std::uint64_t>& seeds, std::size_t jobs)
{
    if (seeds.empty()) {
        throw InvalidInput("run_many: no seeds");
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw InvalidInput("run_many: seeds must be distinct");
    }
    agent.validate();
    const auto start = Clock::now();

    std::vector<std::optional<RunRecord>> slots(seeds.size());
    std::vector<std::string> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
                slots[i] = run_one(agent, env, horizon, seeds[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, seeds.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    BatchResult out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (slots[i]) {
            out.records.push_back(std::move(*slots[i]));
        } else {
            out.failed_seeds.push_back(seeds[i]);
            out.failures.push_back(errors[i]);
        }
    }
    if (out.records.empty()) {
        throw RunFailure("every seed failed; first error: " + out.failures.front());
    }
    out.agg = aggregate(out.records);
    out.wall_s = seconds_since(start);
    return out;
}

} // namespace lmcts
