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

#include "limnet/config.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace limnet {

namespace {

using nlohmann::json;

void take(const json& obj, const char* section, const char* key, double& out) {
    if (obj.contains(key)) {
        if (!obj.at(key).is_number())
            throw std::invalid_argument(std::string(section) + "." + key + " must be a number");
        out = obj.at(key).get<double>();
    }
}

void take(const json& obj, const char* section, const char* key, int& out) {
    if (obj.contains(key)) {
        if (!obj.at(key).is_number_integer())
            throw std::invalid_argument(std::string(section) + "." + key +
                                        " must be an integer");
        out = obj.at(key).get<int>();
    }
}

void take(const json& obj, const char* section, const char* key, bool& out) {
    if (obj.contains(key)) {
        if (!obj.at(key).is_boolean())
            throw std::invalid_argument(std::string(section) + "." + key + " must be a bool");
        out = obj.at(key).get<bool>();
    }
}

void take(const json& obj, const char* section, const char* key, std::string& out) {
    if (obj.contains(key)) {
        if (!obj.at(key).is_string())
            throw std::invalid_argument(std::string(section) + "." + key + " must be a string");
        out = obj.at(key).get<std::string>();
    }
}

void reject_unknown(const json& obj, const char* section,
                    std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok)
            throw std::invalid_argument("unknown config key " + std::string(section) + "." +
                                        it.key());
    }
}

}  // namespace

PhysicsConfig RunConfig::physics() const {
    PhysicsConfig p;
    p.loss_rate = loss_rate;
    p.tau_sp = tau_sp_ns * 1e-9;
    p.beta_sp = beta_sp;
    p.dt = dt_ps * 1e-12;
    p.amp_floor = amp_floor;
    p.noise_factor = noise_factor;
    return p;
}

ScheduleSpec RunConfig::schedule() const {
    ScheduleSpec s;
    s.scheme = scheme_from_name(scheme);
    s.t_mid = t_mid_ns * 1e-9;
    s.t_p = t_p_ns * 1e-9;
    s.pump_final = pump_final_over_threshold * physics().threshold_pump();
    s.pump_mid = pump_ratio_mid * s.pump_final;
    s.alpha_final = alpha_final;
    s.alpha_mid = alpha_ratio_mid * alpha_final;
    s.zeta = zeta ? *zeta : zeta_over_alpha * alpha_final;
    s.master_amp = master_amp;
    return s;
}

ReadoutConfig RunConfig::readout() const {
    ReadoutConfig r;
    r.sigma_threshold = sigma_threshold;
    r.sample_interval = sample_interval_ns * 1e-9;
    return r;
}

double RunConfig::t_end() const {
    const ScheduleSpec s = schedule();
    const double settle = std::max(t_settle_factor * s.t_p, t_settle_min_ns * 1e-9);
    return s.t_final() + settle;
}

void RunConfig::validate() const {
    physics().validate();
    schedule().validate();
    readout().validate();
    if (m < 4 || m % 2 != 0)
        throw std::invalid_argument("run.m must be even and >= 4");
    if (threads < 0) throw std::invalid_argument("run.threads must be >= 0");
    if (!(pump_ratio_mid >= 0.0 && pump_ratio_mid <= 1.0))
        throw std::invalid_argument("schedule.pump_ratio_mid must be in [0, 1]");
    if (!(alpha_ratio_mid >= 0.0 && alpha_ratio_mid <= 1.0))
        throw std::invalid_argument("schedule.alpha_ratio_mid must be in [0, 1]");
    if (t_settle_factor < 0.0 || t_settle_min_ns < 0.0)
        throw std::invalid_argument("run.t_settle_* must be >= 0");
    kernel_from_name(kernel);  // throws on bad name
}

RunConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
    reject_unknown(j, "", {"physics", "schedule", "readout", "run"});

    RunConfig c;
    if (j.contains("physics")) {
        const json& p = j["physics"];
        reject_unknown(p, "physics",
                       {"loss_rate", "tau_sp_ns", "beta_sp", "dt_ps", "amp_floor",
                        "noise_factor"});
        take(p, "physics", "loss_rate", c.loss_rate);
        take(p, "physics", "tau_sp_ns", c.tau_sp_ns);
        take(p, "physics", "beta_sp", c.beta_sp);
        take(p, "physics", "dt_ps", c.dt_ps);
        take(p, "physics", "amp_floor", c.amp_floor);
        take(p, "physics", "noise_factor", c.noise_factor);
    }
    if (j.contains("schedule")) {
        const json& s = j["schedule"];
        reject_unknown(s, "schedule",
                       {"scheme", "t_mid_ns", "t_p_ns", "pump_final_over_threshold",
                        "pump_ratio_mid", "alpha_final", "alpha_ratio_mid",
                        "zeta_over_alpha", "zeta", "a_m"});
        take(s, "schedule", "scheme", c.scheme);
        take(s, "schedule", "t_mid_ns", c.t_mid_ns);
        take(s, "schedule", "t_p_ns", c.t_p_ns);
        take(s, "schedule", "pump_final_over_threshold", c.pump_final_over_threshold);
        take(s, "schedule", "pump_ratio_mid", c.pump_ratio_mid);
        take(s, "schedule", "alpha_final", c.alpha_final);
        take(s, "schedule", "alpha_ratio_mid", c.alpha_ratio_mid);
        take(s, "schedule", "zeta_over_alpha", c.zeta_over_alpha);
        if (s.contains("zeta")) {
            double z = 0.0;
            take(s, "schedule", "zeta", z);
            c.zeta = z;
        }
        take(s, "schedule", "a_m", c.master_amp);
    }
    if (j.contains("readout")) {
        const json& r = j["readout"];
        reject_unknown(r, "readout", {"sigma_threshold", "sample_interval_ns"});
        take(r, "readout", "sigma_threshold", c.sigma_threshold);
        take(r, "readout", "sample_interval_ns", c.sample_interval_ns);
    }
    if (j.contains("run")) {
        const json& r = j["run"];
        reject_unknown(r, "run",
                       {"m", "kernel", "threads", "noise", "flip_random_edge",
                        "t_settle_factor", "t_settle_min_ns"});
        take(r, "run", "m", c.m);
        take(r, "run", "kernel", c.kernel);
        take(r, "run", "threads", c.threads);
        take(r, "run", "noise", c.noise);
        take(r, "run", "flip_random_edge", c.flip_random_edge);
        take(r, "run", "t_settle_factor", c.t_settle_factor);
        take(r, "run", "t_settle_min_ns", c.t_settle_min_ns);
    }
    c.validate();
    return c;
}

std::string config_to_json(const RunConfig& c, int indent) {
    json j;
    j["physics"] = {{"loss_rate", c.loss_rate},   {"tau_sp_ns", c.tau_sp_ns},
                    {"beta_sp", c.beta_sp},       {"dt_ps", c.dt_ps},
                    {"amp_floor", c.amp_floor},   {"noise_factor", c.noise_factor}};
    j["schedule"] = {{"scheme", c.scheme},
                     {"t_mid_ns", c.t_mid_ns},
                     {"t_p_ns", c.t_p_ns},
                     {"pump_final_over_threshold", c.pump_final_over_threshold},
                     {"pump_ratio_mid", c.pump_ratio_mid},
                     {"alpha_final", c.alpha_final},
                     {"alpha_ratio_mid", c.alpha_ratio_mid},
                     {"zeta_over_alpha", c.zeta_over_alpha},
                     {"a_m", c.master_amp}};
    if (c.zeta) j["schedule"]["zeta"] = *c.zeta;
    j["readout"] = {{"sigma_threshold", c.sigma_threshold},
                    {"sample_interval_ns", c.sample_interval_ns}};
    // threads is accepted on input but not echoed: worker count is an
    // execution detail and output artifacts must not depend on it
    j["run"] = {{"m", c.m},
                {"kernel", c.kernel},
                {"noise", c.noise},
                {"flip_random_edge", c.flip_random_edge},
                {"t_settle_factor", c.t_settle_factor},
                {"t_settle_min_ns", c.t_settle_min_ns}};
    return j.dump(indent);
}

}  // namespace limnet
