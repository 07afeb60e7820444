// SPDX-License-Identifier: Apache-2.0
//
// risloc: simulator and estimators for RIS-assisted device-free drone localization
// Copyright (C) 2026 risloc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risloc/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace risloc
{
    using nlohmann::json;

    void SweepConfig::validate() const
    {
        if (snr_db.empty() || K.empty() || zeta.empty())
            throw Error(ErrorKind::config, "sweep: snr, K and zeta lists must be non-empty");
        if (trials < 1)
            throw Error(ErrorKind::config, "sweep: trials must be >= 1");
        if (threads < 0)
            throw Error(ErrorKind::config, "sweep: threads must be >= 0");
        for (double v : snr_db)
            if (!std::isfinite(v))
                throw Error(ErrorKind::config, "sweep: SNR values must be finite");
        for (int k : K)
            if (k < 1)
                throw Error(ErrorKind::config, "sweep: K values must be >= 1");
        for (double z : zeta)
            if (!std::isfinite(z) || z < 0.0)
                throw Error(ErrorKind::config, "sweep: zeta values must be finite and non-negative");
    }

    void SimConfig::validate() const
    {
        scenario.validate();
        arrays.validate();
        sounding.validate();
        estimator.validate();
        sweep.validate();
    }

    namespace
    {
        [[noreturn]] void fail(const std::string &where, const std::string &what)
        {
            throw Error(ErrorKind::config, "config: " + where + ": " + what);
        }

        // Object view that rejects keys outside its schema
        class Section
        {
        public:
            Section(const json &j, std::string where, std::initializer_list<const char *> allowed)
                : j_(j), where_(std::move(where))
            {
                if (!j_.is_object())
                    fail(where_, "expected an object");
                const std::set<std::string> known(allowed.begin(), allowed.end());
                for (auto it = j_.begin(); it != j_.end(); ++it)
                    if (!known.count(it.key()))
                        fail(where_, "unknown key '" + it.key() + "'");
            }

            const json *get(const std::string &key) const
            {
                auto it = j_.find(key);
                return it == j_.end() ? nullptr : &*it;
            }

            std::string path(const std::string &key) const { return where_ + "." + key; }

            void number(const std::string &key, double &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_number())
                        fail(path(key), "expected a number");
                    out = v->get<double>();
                }
            }

            void integer(const std::string &key, int &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_number_integer())
                        fail(path(key), "expected an integer");
                    out = v->get<int>();
                }
            }

            void seed(const std::string &key, std::uint64_t &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() && v->get<long long>() < 0))
                        fail(path(key), "expected a non-negative integer");
                    out = v->get<std::uint64_t>();
                }
            }

            void boolean(const std::string &key, bool &out)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_boolean())
                        fail(path(key), "expected true or false");
                    out = v->get<bool>();
                }
            }

            std::string string(const std::string &key, const std::string &fallback)
            {
                if (const json *v = get(key))
                {
                    if (!v->is_string())
                        fail(path(key), "expected a string");
                    return v->get<std::string>();
                }
                return fallback;
            }

            std::vector<double> numbers(const std::string &key, std::size_t n_exact = 0)
            {
                const json *v = get(key);
                if (!v)
                    return {};
                if (!v->is_array())
                    fail(path(key), "expected an array of numbers");
                std::vector<double> out;
                for (const auto &e : *v)
                {
                    if (!e.is_number())
                        fail(path(key), "expected an array of numbers");
                    out.push_back(e.get<double>());
                }
                if (n_exact && out.size() != n_exact)
                    fail(path(key), "expected exactly " + std::to_string(n_exact) + " numbers");
                return out;
            }

        private:
            const json &j_;
            std::string where_;
        };

        void read_point(Section &sec, const std::string &key, Point3 &p)
        {
            const auto v = sec.numbers(key, 3);
            if (!v.empty())
                p = {v[0], v[1], v[2]};
        }

        void read_array(const json &j, const std::string &where, UpaConfig &cfg, double lambda)
        {
            Section sec(j, where, {"dims", "spacing"});
            const auto dims = sec.numbers("dims", 2);
            if (!dims.empty())
            {
                if (dims[0] != std::floor(dims[0]) || dims[1] != std::floor(dims[1]))
                    fail(where + ".dims", "expected integers");
                cfg.m_a = int(dims[0]);
                cfg.m_b = int(dims[1]);
            }
            auto spacing = sec.numbers("spacing", 2);
            if (spacing.empty())
                spacing = {0.5, 0.5};
            cfg.d_a = spacing[0] * lambda;
            cfg.d_b = spacing[1] * lambda;
        }

        SearchSector read_sector(Section &sec, const std::string &key, SearchSector fallback)
        {
            const auto v = sec.numbers(key, 4);
            if (v.empty())
                return fallback;
            return {deg2rad(v[0]), deg2rad(v[1]), deg2rad(v[2]), deg2rad(v[3])};
        }

        void read_estimator(const json &j, EstimatorConfig &e)
        {
            Section sec(j, "estimator", {"max_iters", "step_policy", "initial_step", "tol", "restarts", "init_policy",
                                         "perturbation", "min_norm", "interference", "search"});
            CgdConfig &c = e.cgd;
            sec.integer("max_iters", c.max_iters);
            const std::string step = sec.string("step_policy", "backtracking");
            if (step == "backtracking")
                c.step_policy = StepPolicy::backtracking;
            else if (step == "fixed")
                c.step_policy = StepPolicy::fixed;
            else
                fail("estimator.step_policy", "expected 'backtracking' or 'fixed'");
            sec.number("initial_step", c.initial_step);
            sec.number("tol", c.tol);
            sec.integer("restarts", c.restarts);
            const std::string init = sec.string("init_policy", "random");
            if (init == "random")
                c.init_policy = InitPolicy::random;
            else if (init == "truth-perturbed")
                c.init_policy = InitPolicy::truth_perturbed;
            else
                fail("estimator.init_policy", "expected 'random' or 'truth-perturbed'");
            sec.number("perturbation", c.perturbation);
            sec.boolean("min_norm", c.min_norm);
            const std::string intf = sec.string("interference", "subtract");
            if (intf == "subtract")
                e.interference = InterferenceMode::subtract;
            else if (intf == "suppress")
                e.interference = InterferenceMode::suppress;
            else
                fail("estimator.interference", "expected 'subtract' or 'suppress'");

            if (const json *s = sec.get("search"))
            {
                Section ss(*s, "estimator.search", {"coarse_step_deg", "refine_steps_deg", "weighting", "bs_sector_deg",
                                                    "ris_sector_deg", "ue_sector_deg"});
                SearchConfig &g = e.search;
                double coarse = rad2deg(g.coarse_step);
                ss.number("coarse_step_deg", coarse);
                g.coarse_step = deg2rad(coarse);
                if (ss.get("refine_steps_deg"))
                {
                    g.refine_steps.clear();
                    for (double d : ss.numbers("refine_steps_deg"))
                        g.refine_steps.push_back(deg2rad(d));
                }
                const std::string w = ss.string("weighting", "plain");
                if (w == "observability")
                    g.weighting = SearchWeighting::observability;
                else if (w == "plain")
                    g.weighting = SearchWeighting::plain;
                else
                    fail("estimator.search.weighting", "expected 'observability' or 'plain'");
                g.bs = read_sector(ss, "bs_sector_deg", g.bs);
                g.ris = read_sector(ss, "ris_sector_deg", g.ris);
                g.ue = read_sector(ss, "ue_sector_deg", g.ue);
            }
        }

        void read_sweep(const json &j, SweepConfig &w)
        {
            Section sec(j, "sweep", {"snr_db", "K", "zeta", "trials", "seed", "ris_enabled", "threads", "peb_method"});
            if (const json *v = sec.get("snr_db"))
            {
                if (v->is_object())
                {
                    Section r(*v, "sweep.snr_db", {"start", "stop", "step"});
                    double a = -10.0, b = 10.0, step = 2.5;
                    r.number("start", a);
                    r.number("stop", b);
                    r.number("step", step);
                    std::ostringstream os;
                    os.precision(17);
                    os << a << ':' << b << ':' << step;
                    w.snr_db = parse_range(os.str());
                }
                else
                    w.snr_db = sec.numbers("snr_db");
            }
            if (sec.get("K"))
            {
                w.K.clear();
                for (double k : sec.numbers("K"))
                {
                    if (k != std::floor(k))
                        fail("sweep.K", "expected integers");
                    w.K.push_back(int(k));
                }
            }
            if (sec.get("zeta"))
                w.zeta = sec.numbers("zeta");
            sec.integer("trials", w.trials);
            sec.seed("seed", w.seed);
            sec.boolean("ris_enabled", w.ris_enabled);
            sec.integer("threads", w.threads);
            const std::string m = sec.string("peb_method", "verbatim");
            if (m == "verbatim")
                w.peb_method = PebMethod::verbatim;
            else if (m == "schur")
                w.peb_method = PebMethod::schur;
            else
                fail("sweep.peb_method", "expected 'verbatim' or 'schur'");
        }
    }

    SimConfig load_config_string(const std::string &json_text)
    {
        json root;
        try
        {
            root = json::parse(json_text);
        }
        catch (const json::exception &e)
        {
            throw Error(ErrorKind::config, std::string("config: malformed JSON: ") + e.what());
        }

        SimConfig cfg;
        try
        {
            Section top(root, "config", {"nodes", "arrays", "carrier", "target", "sounding", "estimator", "noise", "sweep"});

            // Carrier first: array spacings are given in wavelengths
            if (const json *c = top.get("carrier"))
            {
                Section sec(*c, "carrier", {"lambda_m", "bandwidth_hz", "path_loss_exponent"});
                sec.number("lambda_m", cfg.scenario.lambda);
                sec.number("bandwidth_hz", cfg.scenario.bandwidth_hz);
                sec.number("path_loss_exponent", cfg.scenario.gamma);
            }
            if (!(cfg.scenario.lambda > 0.0))
                fail("carrier.lambda_m", "must be positive");
            cfg.arrays = ArraySet::paper_default(cfg.scenario.lambda);

            if (const json *n = top.get("nodes"))
            {
                Section sec(*n, "nodes", {"bs", "ris", "ue", "drone"});
                read_point(sec, "bs", cfg.scenario.bs);
                read_point(sec, "ris", cfg.scenario.ris);
                read_point(sec, "ue", cfg.scenario.ue);
                read_point(sec, "drone", cfg.scenario.drone);
            }
            if (const json *a = top.get("arrays"))
            {
                Section sec(*a, "arrays", {"bs", "ris", "ue"});
                if (const json *v = sec.get("bs"))
                    read_array(*v, "arrays.bs", cfg.arrays.bs, cfg.scenario.lambda);
                if (const json *v = sec.get("ris"))
                    read_array(*v, "arrays.ris", cfg.arrays.ris, cfg.scenario.lambda);
                if (const json *v = sec.get("ue"))
                    read_array(*v, "arrays.ue", cfg.arrays.ue, cfg.scenario.lambda);
            }
            if (const json *t = top.get("target"))
            {
                Section sec(*t, "target", {"zeta_re", "zeta_im"});
                double re = cfg.scenario.zeta.real(), im = cfg.scenario.zeta.imag();
                sec.number("zeta_re", re);
                sec.number("zeta_im", im);
                cfg.scenario.zeta = {re, im};
            }
            if (const json *s = top.get("sounding"))
            {
                Section sec(*s, "sounding", {"K", "seed", "ris_policy", "sky_policy", "sector_az_deg", "sector_el_deg", "grid"});
                if (sec.get("K"))
                {
                    int k = 0;
                    sec.integer("K", k);
                    cfg.sweep.K = {k};
                }
                sec.seed("seed", cfg.sounding_seed);
                const std::string pol = sec.string("ris_policy", "codebook");
                if (pol == "codebook")
                    cfg.sounding.ris_policy = RisPolicy::codebook;
                else if (pol == "random-phase")
                    cfg.sounding.ris_policy = RisPolicy::random_phase;
                else
                    fail("sounding.ris_policy", "expected 'codebook' or 'random-phase'");
                const std::string sky = sec.string("sky_policy", "orthogonal");
                if (sky == "orthogonal")
                    cfg.sounding.sky_policy = SkyBeamPolicy::orthogonal;
                else if (sky == "iid")
                    cfg.sounding.sky_policy = SkyBeamPolicy::iid;
                else
                    fail("sounding.sky_policy", "expected 'orthogonal' or 'iid'");
                const auto az = sec.numbers("sector_az_deg", 2);
                if (!az.empty())
                {
                    cfg.sounding.az_min = deg2rad(az[0]);
                    cfg.sounding.az_max = deg2rad(az[1]);
                }
                const auto el = sec.numbers("sector_el_deg", 2);
                if (!el.empty())
                {
                    cfg.sounding.el_min = deg2rad(el[0]);
                    cfg.sounding.el_max = deg2rad(el[1]);
                }
                const auto grid = sec.numbers("grid", 2);
                if (!grid.empty())
                {
                    cfg.sounding.grid_az = int(grid[0]);
                    cfg.sounding.grid_el = int(grid[1]);
                }
            }
            if (const json *e = top.get("estimator"))
                read_estimator(*e, cfg.estimator);
            if (const json *n = top.get("noise"))
            {
                Section sec(*n, "noise", {"sigma2_dbm", "sigma2_w"});
                if (sec.get("sigma2_dbm") && sec.get("sigma2_w"))
                    fail("noise", "give either sigma2_dbm or sigma2_w, not both");
                double dbm = NAN, w = NAN;
                sec.number("sigma2_dbm", dbm);
                sec.number("sigma2_w", w);
                if (std::isfinite(dbm))
                    cfg.scenario.noise_power_w = dbm_to_watt(dbm);
                else if (std::isfinite(w))
                {
                    if (!(w > 0.0))
                        fail("noise.sigma2_w", "must be positive");
                    cfg.scenario.noise_power_w = w;
                }
            }
            // A sweep section overrides sounding.K
            if (const json *w = top.get("sweep"))
                read_sweep(*w, cfg.sweep);
        }
        catch (const json::exception &e)
        {
            throw Error(ErrorKind::config, std::string("config: ") + e.what());
        }
        cfg.validate();
        return cfg;
    }

    SimConfig load_config_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorKind::config, "config: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        try
        {
            return load_config_string(ss.str());
        }
        catch (const Error &e)
        {
            throw Error(e.kind(), path + ": " + e.what());
        }
    }

    namespace
    {
        double to_number(const std::string &s)
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != s.size() || !std::isfinite(v))
                throw Error(ErrorKind::config, "not a number: '" + s + "'");
            return v;
        }
    }

    std::vector<double> parse_range(const std::string &spec)
    {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(p);
        if (parts.size() == 1)
            return {to_number(parts[0])};
        if (parts.size() != 3)
            throw Error(ErrorKind::config, "range must be 'start:stop:step', got '" + spec + "'");
        const double a = to_number(parts[0]), b = to_number(parts[1]), step = to_number(parts[2]);
        if (!(step > 0.0) || b < a)
            throw Error(ErrorKind::config, "range needs step > 0 and stop >= start: '" + spec + "'");
        std::vector<double> out;
        const long n = std::lround(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i)
            out.push_back(a + double(i) * step);
        return out;
    }

    std::vector<double> parse_list(const std::string &spec)
    {
        std::vector<double> out;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ',');)
            out.push_back(to_number(p));
        if (out.empty())
            throw Error(ErrorKind::config, "empty list");
        return out;
    }
}
