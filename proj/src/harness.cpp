// Copyright 2026 limnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "limnet/harness.hpp"

#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace limnet {

namespace {

// Stream tags keep targets, edge flips and trials on unrelated substreams of
// the same master seed.
constexpr std::uint64_t kTagTarget = 0x7441726765747331ULL;
constexpr std::uint64_t kTagFlip = 0x666c697065646765ULL;
constexpr std::uint64_t kTagTrial = 0x747269616c736565ULL;

}  // namespace

SpinVector planted_target(int m, std::uint64_t master_seed, int point, int target_index) {
    Xoshiro256pp rng(hash_seed(master_seed ^ kTagTarget, static_cast<std::uint64_t>(point),
                               static_cast<std::uint64_t>(target_index), 0));
    SpinVector t(m);
    for (int i = 0; i < m; ++i) t[i] = rng.sign();
    return t;
}

int planted_flip_edge(int n_edges, std::uint64_t master_seed, int point, int target_index) {
    Xoshiro256pp rng(hash_seed(master_seed ^ kTagFlip, static_cast<std::uint64_t>(point),
                               static_cast<std::uint64_t>(target_index), 0));
    return static_cast<int>(rng.next() % static_cast<std::uint64_t>(n_edges));
}

std::uint64_t trial_seed(std::uint64_t master_seed, int point, int target_index,
                         int trial_index) {
    return hash_seed(master_seed ^ kTagTrial, static_cast<std::uint64_t>(point),
                     static_cast<std::uint64_t>(target_index),
                     static_cast<std::uint64_t>(trial_index));
}

SweepSpec sweep_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SweepSpec s;
    for (const auto& [key, _] : j.items())
        if (key != "variable" && key != "values" && key != "trials_per_point" &&
            key != "targets_per_point")
            throw std::invalid_argument(
                "unknown sweep key " + key +
                " (the base config and master seed come from --config/--seed)");
    s.variable = j.at("variable").get<std::string>();
    // Accepted spellings; the first two pairs are aliases for the same knob.
    if (s.variable == "problem_size") s.variable = "m";
    if (s.variable == "pump_final") s.variable = "pump_final_over_threshold";
    if (s.variable != "alpha" && s.variable != "t_p_ns" && s.variable != "ramp_rate" &&
        s.variable != "pump_final_over_threshold" && s.variable != "m")
        throw std::invalid_argument(
            "sweep.variable must be alpha|t_p_ns|ramp_rate|pump_final_over_threshold|m "
            "(problem_size and pump_final are accepted aliases)");
    for (const auto& v : j.at("values")) s.values.push_back(v.get<double>());
    if (s.values.empty()) throw std::invalid_argument("sweep.values must be non-empty");
    if (s.variable == "ramp_rate")
        for (double v : s.values)
            if (!(v > 0.0))
                throw std::invalid_argument("sweep.values must be > 0 for ramp_rate");
    if (j.contains("trials_per_point")) s.trials_per_point = j["trials_per_point"].get<int>();
    if (j.contains("targets_per_point"))
        s.targets_per_point = j["targets_per_point"].get<int>();
    if (s.trials_per_point < 1 || s.targets_per_point < 1 ||
        s.targets_per_point > s.trials_per_point)
        throw std::invalid_argument("sweep trial/target counts invalid");
    return s;
}

HarnessOutput run_points(const std::vector<PointSpec>& points, int trials_per_point,
                         int targets_per_point, std::uint64_t master_seed, int threads) {
    struct Job {
        int point, target_index, trial_index;
    };
    std::vector<Job> jobs;
    // Trials are dealt round-robin across targets so every target gets
    // ceil/floor(trials/targets).
    for (int p = 0; p < static_cast<int>(points.size()); ++p)
        for (int tr = 0; tr < trials_per_point; ++tr)
            jobs.push_back({p, tr % targets_per_point, tr / targets_per_point});

    // Problems per (point, target) are deterministic; build them up front so
    // workers only read shared state.
    struct ProblemSlot {
        IsingProblem problem;
        std::optional<int> flipped_edge;
    };
    std::vector<std::vector<ProblemSlot>> problems(points.size());
    for (int p = 0; p < static_cast<int>(points.size()); ++p) {
        problems[p].resize(targets_per_point);
        for (int tg = 0; tg < targets_per_point; ++tg) {
            const int m = points[p].cfg.m;
            IsingProblem prob = build_cubic_problem(m, planted_target(m, master_seed, p, tg));
            std::optional<int> flipped;
            if (points[p].cfg.flip_random_edge) {
                const int k =
                    planted_flip_edge(static_cast<int>(prob.edges.size()), master_seed, p, tg);
                prob = flip_one_coupling(prob, k);
                flipped = k;
            }
            problems[p][tg] = {std::move(prob), flipped};
        }
    }

    std::vector<TrialRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= jobs.size()) return;
            const Job& jb = jobs[idx];
            const PointSpec& ps = points[jb.point];
            const ProblemSlot& slot = problems[jb.point][jb.target_index];

            TrialSetup setup;
            setup.problem = slot.problem;
            setup.phys = ps.cfg.physics();
            setup.sched = ps.cfg.schedule();
            setup.readout = ps.cfg.readout();
            setup.t_end = ps.cfg.t_end();
            setup.noise = ps.cfg.noise;
            setup.kernel = ps.cfg.kernel_kind();

            TrialRecord rec;
            rec.point = jb.point;
            rec.target_index = jb.target_index;
            rec.trial_index = jb.trial_index;
            rec.seed = trial_seed(master_seed, jb.point, jb.target_index, jb.trial_index);
            rec.target = slot.problem.target;
            rec.flipped_edge = slot.flipped_edge;
            rec.result = TrialRunner(setup, rec.seed).run();
            records[idx] = std::move(rec);
        }
    };

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min<int>(n_threads, static_cast<int>(jobs.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    HarnessOutput out;
    out.trials.resize(points.size());
    for (auto& rec : records) out.trials[rec.point].push_back(std::move(rec));

    for (int p = 0; p < static_cast<int>(points.size()); ++p) {
        const RunConfig& cfg = points[p].cfg;
        AggregateResult ag;
        ag.scheme = points[p].label;
        ag.m = cfg.m;
        ag.alpha_f = cfg.alpha_final;
        ag.t_p_ns = cfg.t_p_ns;
        ag.pump_over_th = cfg.pump_final_over_threshold;
        ag.n_trials = static_cast<int>(out.trials[p].size());
        ag.master_seed = master_seed;
        double worst = 0.0;
        for (const auto& rec : out.trials[p]) {
            if (rec.result.success && rec.result.comp_time) {
                ++ag.n_success;
                worst = std::max(worst, *rec.result.comp_time);
            }
        }
        ag.success_prob =
            ag.n_trials > 0 ? static_cast<double>(ag.n_success) / ag.n_trials : 0.0;
        if (ag.n_success > 0) {
            ag.worst_time_ns = worst * 1e9;
            ag.net_time_ns = *ag.worst_time_ns / ag.success_prob;
        }
        out.points.push_back(std::move(ag));
    }
    return out;
}

HarnessOutput run_sweep(const RunConfig& base, const SweepSpec& sweep,
                        std::uint64_t master_seed) {
    std::vector<PointSpec> points;
    for (double v : sweep.values) {
        RunConfig cfg = base;
        if (sweep.variable == "alpha")
            cfg.alpha_final = v;
        else if (sweep.variable == "t_p_ns")
            cfg.t_p_ns = v;
        else if (sweep.variable == "ramp_rate")
            // coupling slope over the main ramp, in alpha per ns
            cfg.t_p_ns = cfg.alpha_final * (1.0 - cfg.alpha_ratio_mid) / v;
        else if (sweep.variable == "pump_final_over_threshold")
            cfg.pump_final_over_threshold = v;
        else if (sweep.variable == "m")
            cfg.m = static_cast<int>(v);
        cfg.validate();
        points.push_back({cfg, cfg.scheme});
    }
    return run_points(points, sweep.trials_per_point, sweep.targets_per_point, master_seed,
                      base.threads);
}

HarnessOutput run_size_scaling(const RunConfig& base, const std::vector<int>& sizes,
                               const std::vector<std::string>& schemes, bool flip_variant,
                               int trials_per_point, int targets_per_point,
                               std::uint64_t master_seed) {
    std::vector<PointSpec> points;
    for (const std::string& sc : schemes) {
        scheme_from_name(sc);  // validate early
        for (int m : sizes) {
            RunConfig cfg = base;
            cfg.scheme = sc;
            cfg.m = m;
            cfg.flip_random_edge = false;
            cfg.validate();
            points.push_back({cfg, sc});
        }
    }
    if (flip_variant) {
        for (int m : sizes) {
            RunConfig cfg = base;
            cfg.scheme = "gc";
            cfg.m = m;
            cfg.flip_random_edge = true;
            cfg.validate();
            points.push_back({cfg, "gc-flip"});
        }
    }
    return run_points(points, trials_per_point, targets_per_point, master_seed, base.threads);
}

namespace {

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::string results_to_csv(const HarnessOutput& out) {
    std::string csv =
        "scheme,m,alpha_f,t_p_ns,pump_over_th,n_trials,n_success,success_prob,"
        "worst_time_ns,net_time_ns,master_seed\n";
    for (const auto& ag : out.points) {
        csv += ag.scheme;
        csv += ',' + std::to_string(ag.m);
        csv += ',' + fmt(ag.alpha_f, "%.9g");
        csv += ',' + fmt(ag.t_p_ns, "%.9g");
        csv += ',' + fmt(ag.pump_over_th, "%.9g");
        csv += ',' + std::to_string(ag.n_trials);
        csv += ',' + std::to_string(ag.n_success);
        csv += ',' + fmt(ag.success_prob, "%.6f");
        csv += ',';
        if (ag.worst_time_ns) csv += fmt(*ag.worst_time_ns, "%.4f");
        csv += ',';
        if (ag.net_time_ns) csv += fmt(*ag.net_time_ns, "%.4f");
        csv += ',' + std::to_string(ag.master_seed);
        csv += '\n';
    }
    return csv;
}

namespace {

nlohmann::json trial_result_json(const TrialResult& r) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["m"] = r.m;
    j["success"] = r.success;
    j["success_circular"] = r.success_circ;
    j["success_diagonal"] = r.success_diag;
    j["comp_time_ns"] =
        r.comp_time ? nlohmann::json(*r.comp_time * 1e9) : nlohmann::json(nullptr);
    j["bifurcation_time_ns"] =
        r.bifurcation_time ? nlohmann::json(*r.bifurcation_time * 1e9)
                           : nlohmann::json(nullptr);
    j["final_sigma_circular"] = r.final_sigma_circ;
    j["final_sigma_diagonal"] = r.final_sigma_diag;
    j["numeric_fault"] = r.numeric_fault;
    if (r.numeric_fault) j["fault_message"] = r.fault_message;
    return j;
}

}  // namespace

std::string results_to_json(const HarnessOutput& out, const std::vector<PointSpec>& points,
                            std::uint64_t master_seed) {
    nlohmann::json root;
    root["master_seed"] = master_seed;
    auto pts = nlohmann::json::array();
    for (int p = 0; p < static_cast<int>(out.points.size()); ++p) {
        const AggregateResult& ag = out.points[p];
        nlohmann::json jp;
        jp["scheme"] = ag.scheme;
        jp["m"] = ag.m;
        jp["alpha_f"] = ag.alpha_f;
        jp["t_p_ns"] = ag.t_p_ns;
        jp["pump_over_th"] = ag.pump_over_th;
        jp["n_trials"] = ag.n_trials;
        jp["n_success"] = ag.n_success;
        jp["success_prob"] = ag.success_prob;
        jp["worst_time_ns"] =
            ag.worst_time_ns ? nlohmann::json(*ag.worst_time_ns) : nlohmann::json(nullptr);
        jp["net_time_ns"] =
            ag.net_time_ns ? nlohmann::json(*ag.net_time_ns) : nlohmann::json(nullptr);
        jp["effective_config"] =
            nlohmann::json::parse(config_to_json(points[p].cfg));
        auto trials = nlohmann::json::array();
        for (const auto& rec : out.trials[p]) {
            nlohmann::json jt = trial_result_json(rec.result);
            jt["target_index"] = rec.target_index;
            jt["trial_index"] = rec.trial_index;
            jt["target"] = rec.target;
            jt["flipped_edge"] =
                rec.flipped_edge ? nlohmann::json(*rec.flipped_edge) : nlohmann::json(nullptr);
            trials.push_back(std::move(jt));
        }
        jp["trials"] = std::move(trials);
        pts.push_back(std::move(jp));
    }
    root["points"] = std::move(pts);
    return root.dump(2);
}

std::string trial_to_json(const TrialResult& r, const RunConfig& cfg, int indent) {
    nlohmann::json j = trial_result_json(r);
    j["effective_config"] = nlohmann::json::parse(config_to_json(cfg));
    return j.dump(indent);
}

}  // namespace limnet
