#include "blepc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "blepc/measure.hpp"

namespace blepc {

void ModelConfig::validate() const {
    for (const auto& p : profiles) p.validate();
    power.validate();
    if (!(link.conn_interval_s > 0.0)) throw std::invalid_argument("link: conn_interval_s must be > 0");
    if (!(link.pkt_cycle_s > 0.0)) throw std::invalid_argument("link: pkt_cycle_s must be > 0");
    if (link.max_pkts_per_event < 0) throw std::invalid_argument("link: max_pkts_per_event < 0");
    if (link.payload_bytes <= 0) throw std::invalid_argument("link: payload_bytes must be > 0");
    if (link.max_pkts_per_event * link.pkt_cycle_s > link.conn_interval_s + 1e-12)
        throw std::invalid_argument("link: max_pkts_per_event * pkt_cycle_s exceeds the interval");
    if (!(link.supervision_timeout_s > 0.0))
        throw std::invalid_argument("link: supervision_timeout_s must be > 0");
    if (!(latency.mean_s >= 0.0 && latency.sigma_s >= 0.0))
        throw std::invalid_argument("latency: mean and sigma must be >= 0");
}

double distance_at(const Motion& motion, double t_s) {
    if (motion.kind == Motion::Kind::fixed || motion.duration_s <= 0.0) return motion.d_start_m;
    const double f = std::clamp(t_s / motion.duration_s, 0.0, 1.0);
    return motion.d_start_m + f * (motion.d_end_m - motion.d_start_m);
}

std::string_view to_string(DisturbanceKind k) {
    switch (k) {
        case DisturbanceKind::fem_remove: return "fem_remove";
        case DisturbanceKind::fem_restore: return "fem_restore";
        case DisturbanceKind::step_atten: return "step_atten";
    }
    return "unknown";
}

void ScenarioSpec::validate() const {
    if (!(duration_s >= 0.0)) throw std::invalid_argument(name + ": duration must be >= 0");
    if (!(motion.d_start_m >= 0.0 && motion.d_end_m >= 0.0))
        throw std::invalid_argument(name + ": distances must be >= 0");
    if (motion.kind == Motion::Kind::ramp && !(motion.duration_s > 0.0))
        throw std::invalid_argument(name + ": ramp duration must be > 0");
    for (const auto& d : disturbances)
        if (!(d.time_s >= 0.0 && d.time_s <= duration_s))
            throw std::invalid_argument(name + ": disturbance time outside [0, duration]");
    if (!(throughput_calc_hz > 0.0))
        throw std::invalid_argument(name + ": throughput_calc_hz must be > 0");
    controller.validate();
}

DisturbanceState apply_disturbance(const DisturbanceState& state, const Disturbance& d,
                                   bool drops_tx) {
    DisturbanceState next = state;
    switch (d.kind) {
        case DisturbanceKind::fem_remove:
            next.fem.rx_present = false;
            if (drops_tx) next.fem.tx_present = false;
            break;
        case DisturbanceKind::fem_restore:
            next.fem.rx_present = true;
            next.fem.tx_present = true;
            break;
        case DisturbanceKind::step_atten:
            next.extra_atten_db += d.atten_db;
            break;
    }
    return next;
}

namespace {

// Same-instant ordering: channel < link < measure < control < report.
enum class Phase : int { channel = 0, link = 1, measure = 2, control = 3 };

enum class Kind : int {
    disturbance,
    channel_step,
    command_apply,
    conn_event,
    outer_tick,
    inner_tick,
};

struct Event {
    SimTime t;
    Phase phase;
    Kind kind;
    std::uint64_t seq;
    std::size_t index;  // disturbance index or occurrence counter

    bool operator>(const Event& o) const {
        if (t != o.t) return t > o.t;
        if (phase != o.phase) return phase > o.phase;
        if (kind != o.kind) return kind > o.kind;
        return seq > o.seq;
    }
};

Phase phase_of(Kind k) {
    switch (k) {
        case Kind::disturbance:
        case Kind::channel_step: return Phase::channel;
        case Kind::command_apply:
        case Kind::conn_event: return Phase::link;
        case Kind::outer_tick:
        case Kind::inner_tick: return Phase::control;
    }
    return Phase::control;
}

// Packets of the current connection event, credited to the estimator as
// their completion times pass.
struct Burst {
    SimTime start;
    SimTime cycle;
    int count = 0;
    int credited = 0;
    double bits_each = 0.0;

    void flush(ThroughputEstimator& est, SimTime now) {
        while (credited < count) {
            const SimTime done = start + SimTime{cycle.us * (credited + 1)};
            if (done > now) break;
            est.record_delivery(bits_each, done);
            ++credited;
        }
    }
};

class Runner {
public:
    Runner(const ScenarioSpec& spec, const ModelConfig& model)
        : spec_(spec),
          model_(model),
          env_(model.profile(spec.env)),
          rng_(spec.seed),
          estimator_(spec.throughput_calc_hz),
          end_(SimTime::from_seconds(spec.duration_s)) {
        dist_.fem = model.fem;
        dist_.fem.set_present(spec.fem_initial);
        ctrl_ = init_controller(spec.controller, model.table);
        const double initial = quantize_txp(model.table, ctrl_.txp_setpoint_dbm);
        link_ = LinkState::open(model.link, initial, SimTime{});
        last_issued_ = initial;
        interval_ = SimTime::from_seconds(model.link.conn_interval_s);
        cycle_ = SimTime::from_seconds(model.link.pkt_cycle_s);
        if (env_.shadow_sigma_db > 0.0)
            channel_.shadow_db = env_.shadow_sigma_db * standard_normal(rng_.shadowing);
        last_power_ = model.power.p_idle_mw;
    }

    RunTrace run() {
        if (end_.us <= 0) return std::move(trace_);
        for (std::size_t i = 0; i < spec_.disturbances.size(); ++i)
            push(SimTime::from_seconds(spec_.disturbances[i].time_s), Kind::disturbance, i);
        push(SimTime{}, Kind::conn_event, 0);
        const auto strategy = spec_.controller.strategy;
        if (strategy == Strategy::rssi || strategy == Strategy::hybrid) {
            inner_period_ = period_of(spec_.controller.inner_cfg.update_hz);
            push(inner_period_, Kind::inner_tick, 1);
        }
        if (strategy == Strategy::throughput || strategy == Strategy::hybrid) {
            outer_period_ = period_of(spec_.controller.outer_cfg.update_hz);
            push(outer_period_, Kind::outer_tick, 1);
        }

        while (!queue_.empty()) {
            const Event ev = queue_.top();
            if (ev.t >= end_) break;
            queue_.pop();
            handle(ev);
            if (sample_due_ && (queue_.empty() || queue_.top().t != ev.t)) emit(ev.t);
        }
        return std::move(trace_);
    }

private:
    void push(SimTime t, Kind kind, std::size_t index) {
        queue_.push(Event{t, phase_of(kind), kind, seq_++, index});
    }

    double distance(SimTime t) const { return distance_at(spec_.motion, t.seconds()); }

    std::optional<double> read_rssi(SimTime t) {
        if (!link_.connected) return std::nullopt;
        const double fade = draw_fade(env_, rng_.fading);
        return sample_rssi(link_, dist_.fem, env_, channel_, distance(t), dist_.extra_atten_db,
                           fade);
    }

    void handle(const Event& ev) {
        switch (ev.kind) {
            case Kind::disturbance: {
                const auto& d = spec_.disturbances[ev.index];
                dist_ = apply_disturbance(dist_, d, spec_.fem_remove_drops_tx);
                trace_.events.push_back({ev.t.seconds(), std::string(to_string(d.kind))});
                break;
            }
            case Kind::channel_step:
                channel_ = step_channel(env_, channel_, model_.link.conn_interval_s, rng_.shadowing);
                break;
            case Kind::command_apply:
                link_ = advance_commands(link_, ev.t);
                break;
            case Kind::conn_event:
                connection_event(ev.t);
                push(SimTime{interval_.us * static_cast<std::int64_t>(ev.index + 1)},
                     Kind::channel_step, 0);
                push(SimTime{interval_.us * static_cast<std::int64_t>(ev.index + 1)},
                     Kind::conn_event, ev.index + 1);
                break;
            case Kind::outer_tick:
                outer_tick(ev.t);
                push(SimTime{outer_period_.us * static_cast<std::int64_t>(ev.index + 1)},
                     Kind::outer_tick, ev.index + 1);
                break;
            case Kind::inner_tick:
                inner_tick(ev.t);
                push(SimTime{inner_period_.us * static_cast<std::int64_t>(ev.index + 1)},
                     Kind::inner_tick, ev.index + 1);
                break;
        }
    }

    void connection_event(SimTime t) {
        burst_.flush(estimator_, t);
        burst_ = Burst{t, cycle_, 0, 0, 0.0};
        sample_due_ = true;
        if (!link_.connected) {
            last_power_ = model_.power.p_idle_mw;
            return;
        }
        const auto reading = read_rssi(t);
        sample_rssi_ = *reading;
        const auto result = run_connection_event(link_, env_, *reading, rng_.packet);
        burst_.count = result.delivered_packets;
        burst_.bits_each = model_.link.payload_bytes * 8.0;

        link_ = update_supervision(link_, result, t);
        if (!link_.connected) trace_.events.push_back({t.seconds(), "disconnect"});

        const double interval_s = model_.link.conn_interval_s;
        const double duty = std::clamp(result.radio_active_s / interval_s, 0.0, 1.0);
        const double kbps = result.delivered_bits / interval_s / 1000.0;
        last_power_ = peripheral_power(model_.power, effective_tx_power(link_, dist_.fem), duty,
                                       kbps, dist_.fem.tx_present);
        const double hz = spec_.controller.total_update_hz();
        if (hz > 0.0)
            last_power_ += control_overhead(Role::peripheral, spec_.controller.strategy, hz);
    }

    void issue(double commanded, SimTime t) {
        if (commanded == last_issued_) return;
        last_issued_ = commanded;
        const double latency = model_.latency.sample(rng_.latency);
        link_ = apply_txp_command(link_, model_.table, commanded, t, latency);
        push(link_.pending_commands.back().apply_time, Kind::command_apply, 0);
    }

    void inner_tick(SimTime t) {
        if (!link_.connected) return;
        const auto reading = read_rssi(t);
        sample_rssi_ = *reading;
        sample_due_ = true;
        TickResult r = spec_.controller.strategy == Strategy::hybrid
                           ? hybrid_inner_tick(spec_.controller, ctrl_, *reading, model_.table)
                           : rssi_controller_tick(spec_.controller, ctrl_, *reading, model_.table);
        ctrl_ = r.state;
        issue(r.commanded_txp_dbm, t);
    }

    void outer_tick(SimTime t) {
        if (!link_.connected) return;
        burst_.flush(estimator_, t);
        const double measured = estimator_.read_estimate(t);
        if (spec_.controller.strategy == Strategy::hybrid) {
            ctrl_ = hybrid_outer_tick(spec_.controller, ctrl_, measured);
            return;
        }
        auto r = throughput_controller_tick(spec_.controller, ctrl_, measured, model_.table);
        ctrl_ = r.state;
        issue(r.commanded_txp_dbm, t);
    }

    void emit(SimTime t) {
        burst_.flush(estimator_, t);
        TraceSample s;
        s.t_s = t.seconds();
        s.distance_m = distance(t);
        s.rssi_dbm = sample_rssi_;
        s.throughput_kbps = estimator_.read_estimate(t);
        s.txp_dbm = link_.commanded_txp_dbm;
        switch (spec_.controller.strategy) {
            case Strategy::rssi: s.rssi_target_dbm = spec_.controller.rssi_target_dbm; break;
            case Strategy::hybrid: s.rssi_target_dbm = ctrl_.rssi_target_dbm; break;
            default: break;
        }
        s.power_mw = last_power_;
        s.connected = link_.connected;
        trace_.samples.push_back(s);
        sample_due_ = false;
        sample_rssi_ = kNaN;
    }

    const ScenarioSpec& spec_;
    const ModelConfig& model_;
    const EnvironmentProfile& env_;
    RngStreams rng_;
    ThroughputEstimator estimator_;
    SimTime end_;
    SimTime interval_{};
    SimTime cycle_{};
    SimTime inner_period_{};
    SimTime outer_period_{};

    DisturbanceState dist_;
    ChannelState channel_;
    LinkState link_;
    ControllerState ctrl_;
    double last_issued_ = 0.0;
    Burst burst_;

    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    std::uint64_t seq_ = 0;
    bool sample_due_ = false;
    double sample_rssi_ = kNaN;
    double last_power_ = 0.0;
    RunTrace trace_;
};

}  // namespace

RunTrace run_scenario(const ScenarioSpec& spec, const ModelConfig& model) {
    spec.validate();
    model.validate();
    Runner runner(spec, model);
    return runner.run();
}

}  // namespace blepc
