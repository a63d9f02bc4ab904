#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unicrit/presets.hpp"
#include "unicrit/returns.hpp"
#include "unicrit/serialize.hpp"
#include "unicrit/series.hpp"

namespace py = pybind11;
using namespace unicrit;

namespace {

TreeOptions make_options(std::uint64_t budget, unsigned threads) {
    TreeOptions opts;
    opts.node_budget = budget;
    opts.threads = threads;
    return opts;
}

void register_exceptions(py::module_& m) {
    static py::exception<UsageError> usage(m, "UsageError");
    static py::exception<BudgetError> budget(m, "BudgetError");
    static py::exception<DynamicsError> dynamics(m, "DynamicsError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const UsageError& e) {
            usage(e.what());
        } catch (const BudgetError& e) {
            budget(e.what());
        } catch (const DynamicsError& e) {
            dynamics(e.what());
        }
    });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dynamical diagnostics for unicritical polynomials z^d + c";
    register_exceptions(m);

    py::class_<UnicriticalMap>(m, "UnicriticalMap")
        .def(py::init<int, Complex>(), py::arg("degree"), py::arg("c"))
        .def_readonly("degree", &UnicriticalMap::degree)
        .def_readonly("c", &UnicriticalMap::c)
        .def("apply", &UnicriticalMap::apply, py::arg("z"))
        .def("escape_radius", &UnicriticalMap::escape_radius)
        .def("__repr__", [](const UnicriticalMap& map) {
            return "UnicriticalMap(degree=" + std::to_string(map.degree) +
                   ", c=(" + std::to_string(map.c.real()) + ", " +
                   std::to_string(map.c.imag()) + "))";
        });

    py::class_<OrbitSegment>(m, "OrbitSegment")
        .def_readonly("start", &OrbitSegment::start)
        .def_readonly("points", &OrbitSegment::points)
        .def_readonly("log_deriv", &OrbitSegment::log_deriv)
        .def_readonly("escaped_at", &OrbitSegment::escaped_at);

    py::class_<PoincareTruncation>(m, "PoincareTruncation")
        .def_readonly("target", &PoincareTruncation::target)
        .def_readonly("exponent", &PoincareTruncation::exponent)
        .def_readonly("depth", &PoincareTruncation::depth)
        .def_readonly("level_sums", &PoincareTruncation::level_sums)
        .def_readonly("partial", &PoincareTruncation::partial)
        .def_readonly("dropped_mass_bound", &PoincareTruncation::dropped_mass_bound);

    py::class_<ForwardSeriesTruncation>(m, "ForwardSeriesTruncation")
        .def_readonly("exponent", &ForwardSeriesTruncation::exponent)
        .def_readonly("depth", &ForwardSeriesTruncation::depth)
        .def_readonly("terms", &ForwardSeriesTruncation::terms)
        .def_readonly("partial", &ForwardSeriesTruncation::partial);

    py::class_<ConvergenceExponentEstimate>(m, "ConvergenceExponentEstimate")
        .def_readonly("target", &ConvergenceExponentEstimate::target)
        .def_readonly("depth", &ConvergenceExponentEstimate::depth)
        .def_readonly("pressure_samples",
                      &ConvergenceExponentEstimate::pressure_samples)
        .def_readonly("root", &ConvergenceExponentEstimate::root)
        .def_readonly("bracket", &ConvergenceExponentEstimate::bracket);

    py::class_<DiskEnclosure>(m, "DiskEnclosure")
        .def(py::init<Complex, double>(), py::arg("center"), py::arg("radius"))
        .def_readonly("center", &DiskEnclosure::center)
        .def_readonly("radius", &DiskEnclosure::radius)
        .def("contains", &DiskEnclosure::contains, py::arg("z"),
             py::arg("slack") = 0.0);

    py::class_<PullbackStep>(m, "PullbackStep")
        .def_readonly("image", &PullbackStep::image)
        .def_readonly("outer", &PullbackStep::outer)
        .def_readonly("inner_point", &PullbackStep::inner_point)
        .def_readonly("branch", &PullbackStep::branch)
        .def_readonly("critical", &PullbackStep::critical)
        .def_readonly("ambiguous", &PullbackStep::ambiguous);

    py::class_<PullbackChain>(m, "PullbackChain")
        .def_readonly("target", &PullbackChain::target)
        .def_readonly("steps", &PullbackChain::steps)
        .def_readonly("diam_lower", &PullbackChain::diam_lower)
        .def_readonly("diam_upper", &PullbackChain::diam_upper)
        .def_readonly("valid", &PullbackChain::valid);

    py::class_<ScaleRow>(m, "ScaleRow")
        .def_readonly("delta", &ScaleRow::delta)
        .def_readonly("r_lo", &ScaleRow::r_lo)
        .def_readonly("r_hi", &ScaleRow::r_hi)
        .def_readonly("return_times_used", &ScaleRow::return_times_used)
        .def_readonly("cutoff_limited", &ScaleRow::cutoff_limited)
        .def_readonly("excluded_chains", &ScaleRow::excluded_chains);

    py::class_<ScaleProfile>(m, "ScaleProfile")
        .def_readonly("degree", &ScaleProfile::degree)
        .def_readonly("cutoff", &ScaleProfile::cutoff)
        .def_readonly("rows", &ScaleProfile::rows)
        .def("cutoff_limited", &ScaleProfile::cutoff_limited);

    py::enum_<ChildCertainty>(m, "ChildCertainty")
        .value("certain_child", ChildCertainty::certain_child)
        .value("certain_not", ChildCertainty::certain_not)
        .value("unknown", ChildCertainty::unknown);

    py::class_<ChildRecord>(m, "ChildRecord")
        .def_readonly("time", &ChildRecord::time)
        .def_readonly("enclosure", &ChildRecord::enclosure)
        .def_readonly("image_diam_lower", &ChildRecord::image_diam_lower)
        .def_readonly("image_diam_upper", &ChildRecord::image_diam_upper)
        .def_readonly("certainty", &ChildRecord::certainty);

    py::class_<ChildSumReport>(m, "ChildSumReport")
        .def_readonly("s", &ChildSumReport::s)
        .def_readonly("sum_upper", &ChildSumReport::sum_upper)
        .def_readonly("r_lo", &ChildSumReport::r_lo)
        .def_readonly("bound", &ChildSumReport::bound)
        .def_readonly("comparable", &ChildSumReport::comparable)
        .def_readonly("holds", &ChildSumReport::holds);

    py::class_<ChildScan>(m, "ChildScan")
        .def_readonly("delta", &ChildScan::delta)
        .def_readonly("cutoff", &ChildScan::cutoff)
        .def_readonly("children", &ChildScan::children)
        .def_readonly("sum_report", &ChildScan::sum_report);

    py::class_<ReturnDerivativeStats>(m, "ReturnDerivativeStats")
        .def_readonly("delta", &ReturnDerivativeStats::delta)
        .def_readonly("m_plus", &ReturnDerivativeStats::m_plus)
        .def_readonly("m_minus", &ReturnDerivativeStats::m_minus)
        .def_readonly("m", &ReturnDerivativeStats::m)
        .def_readonly("cutoff", &ReturnDerivativeStats::cutoff)
        .def_readonly("tree_cutoff", &ReturnDerivativeStats::tree_cutoff);

    py::class_<CloseReturn>(m, "CloseReturn")
        .def_readonly("delta_hi", &CloseReturn::delta_hi)
        .def_readonly("delta_lo", &CloseReturn::delta_lo)
        .def_readonly("time", &CloseReturn::time)
        .def_readonly("zeta", &CloseReturn::zeta)
        .def_readonly("log_deriv_at_zeta", &CloseReturn::log_deriv_at_zeta)
        .def_readonly("forward_residual", &CloseReturn::forward_residual)
        .def_readonly("verified", &CloseReturn::verified);

    py::class_<ReturnStaircase>(m, "ReturnStaircase")
        .def_readonly("delta_min", &ReturnStaircase::delta_min)
        .def_readonly("delta_max", &ReturnStaircase::delta_max)
        .def_readonly("cutoff", &ReturnStaircase::cutoff)
        .def_readonly("returns", &ReturnStaircase::returns);

    py::class_<ReturnRBound>(m, "ReturnRBound")
        .def_readonly("diam_bound", &ReturnRBound::diam_bound)
        .def_readonly("r_implied", &ReturnRBound::r_implied);

    py::class_<IntervalRatio>(m, "IntervalRatio")
        .def_readonly("delta_lo", &IntervalRatio::delta_lo)
        .def_readonly("delta_hi", &IntervalRatio::delta_hi)
        .def_readonly("time", &IntervalRatio::time)
        .def_readonly("integral", &IntervalRatio::integral)
        .def_readonly("deriv_term", &IntervalRatio::deriv_term)
        .def_readonly("ratio", &IntervalRatio::ratio);

    py::class_<FeigenbaumRegen>(m, "FeigenbaumRegen")
        .def_readonly("superstable", &FeigenbaumRegen::superstable)
        .def_readonly("extrapolated", &FeigenbaumRegen::extrapolated);

    m.attr("FEIGENBAUM_PARAMETER") = kFeigenbaumParameter;

    m.def("preset_map", &preset_map, py::arg("name"));
    m.def("regen_feigenbaum", &regen_feigenbaum, py::arg("max_k") = 12,
          py::arg("tol") = 1e-12);
    m.def("iterate", &iterate, py::arg("map"), py::arg("start"), py::arg("n"));
    m.def(
        "preimages_one_step",
        [](const UnicriticalMap& map, Complex w) {
            const OneStepPreimages out = preimages_one_step(map, w);
            return py::make_tuple(out.roots, out.multiple_root);
        },
        py::arg("map"), py::arg("w"),
        "Returns (roots, multiple_root) for z^d = w - c.");
    m.def(
        "preimage_tree_nodes",
        [](const UnicriticalMap& map, Complex w, int depth,
           std::uint64_t budget) {
            std::vector<std::tuple<Complex, int, double>> nodes;
            enumerate_preimage_tree(
                map, w, depth,
                [&](const NodeView& node) {
                    nodes.emplace_back(node.point, node.depth,
                                       node.log_abs_deriv);
                },
                make_options(budget, 1));
            return nodes;
        },
        py::arg("map"), py::arg("w"), py::arg("depth"),
        py::arg("budget") = std::uint64_t{1} << 22,
        "Materializes (point, depth, log_abs_deriv) for every tree node.");
    m.def(
        "level_sum",
        [](const UnicriticalMap& map, Complex w, double t, int n,
           std::uint64_t budget, unsigned threads) {
            return level_sum(map, w, t, n, make_options(budget, threads));
        },
        py::arg("map"), py::arg("w"), py::arg("t"), py::arg("n"),
        py::arg("budget") = std::uint64_t{1} << 22, py::arg("threads") = 1);
    m.def(
        "poincare_truncation",
        [](const UnicriticalMap& map, Complex w, double t, int depth,
           bool pruned, double prune_floor, std::uint64_t budget,
           unsigned threads) {
            return poincare_truncation(
                map, w, t, depth,
                pruned ? TruncationMode::pruned : TruncationMode::exhaustive,
                prune_floor, make_options(budget, threads));
        },
        py::arg("map"), py::arg("w"), py::arg("t"), py::arg("depth"),
        py::arg("pruned") = false, py::arg("prune_floor") = 1e-18,
        py::arg("budget") = std::uint64_t{1} << 22, py::arg("threads") = 1);
    m.def("forward_series", &forward_series, py::arg("map"), py::arg("t"),
          py::arg("depth"));
    m.def(
        "pressure_estimate",
        [](const UnicriticalMap& map, Complex w, double t, int n,
           std::uint64_t budget, unsigned threads) {
            return pressure_estimate(map, w, t, n, make_options(budget, threads));
        },
        py::arg("map"), py::arg("w"), py::arg("t"), py::arg("n"),
        py::arg("budget") = std::uint64_t{1} << 22, py::arg("threads") = 1);
    m.def(
        "convergence_exponent",
        [](const UnicriticalMap& map, Complex w, int n, double t_lo,
           double t_hi, double tol, std::uint64_t budget, unsigned threads) {
            return convergence_exponent(map, w, n, t_lo, t_hi, tol,
                                        make_options(budget, threads));
        },
        py::arg("map"), py::arg("w"), py::arg("n"), py::arg("t_lo"),
        py::arg("t_hi"), py::arg("tol") = 1e-3,
        py::arg("budget") = std::uint64_t{1} << 22, py::arg("threads") = 1);
    m.def(
        "min_level_derivative",
        [](const UnicriticalMap& map, int n, std::uint64_t budget,
           unsigned threads) {
            return min_level_derivative(map, n, make_options(budget, threads));
        },
        py::arg("map"), py::arg("n"),
        py::arg("budget") = std::uint64_t{1} << 22, py::arg("threads") = 1);
    m.def("disk_preimage_components", &disk_preimage_components, py::arg("map"),
          py::arg("disk"));
    m.def("modulus_round", &modulus_round, py::arg("outer_radius"),
          py::arg("inner_radius"));
    m.def("critical_scale_disk", &critical_scale_disk, py::arg("map"),
          py::arg("delta"));
    m.def("pull_back_along_orbit", &pull_back_along_orbit, py::arg("map"),
          py::arg("disk"), py::arg("reference"), py::arg("n"));
    m.def("geometric_grid", &geometric_grid, py::arg("delta0") = 1.0,
          py::arg("count") = 40, py::arg("ratio") = 2.0);
    m.def("r_profile", &r_profile, py::arg("map"), py::arg("delta_grid"),
          py::arg("cutoff"), py::arg("threads") = 1);
    m.def("find_children", &find_children, py::arg("map"), py::arg("delta"),
          py::arg("cutoff"), py::arg("t") = 1.0);
    m.def(
        "return_derivative_stats",
        [](const UnicriticalMap& map, double delta, int cutoff, int tree_cutoff,
           std::uint64_t budget, unsigned threads) {
            return return_derivative_stats(map, delta, cutoff, tree_cutoff,
                                           make_options(budget, threads));
        },
        py::arg("map"), py::arg("delta"), py::arg("cutoff"),
        py::arg("tree_cutoff"), py::arg("budget") = std::uint64_t{1} << 22,
        py::arg("threads") = 1);
    m.def("return_staircase", &return_staircase, py::arg("map"),
          py::arg("delta_min"), py::arg("delta_max"), py::arg("cutoff"));
    m.def("r_bound_from_return", &r_bound_from_return, py::arg("map"),
          py::arg("ret"));
    m.def(
        "contraction_integral",
        [](const ScaleProfile& profile, double t, bool over_degree) {
            return contraction_integral(profile, t,
                                        over_degree
                                            ? IntegralExponent::t_over_degree
                                            : IntegralExponent::full_t);
        },
        py::arg("profile"), py::arg("t"), py::arg("over_degree") = false);
    m.def("close_return_ratios", &close_return_ratios, py::arg("map"),
          py::arg("staircase"), py::arg("profile"), py::arg("t"));
}
