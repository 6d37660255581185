"""Shared identity checkers: each returns a list of violation strings so the
exhaustive suites and the acceptance gate can reuse the same loops."""

from qderiv import Deformation, make_field

_FIELDS = {}


def field(p, k):
    if (p, k) not in _FIELDS:
        _FIELDS[(p, k)] = make_field(p, k)
    return _FIELDS[(p, k)]


def frobenius_deformations(f):
    return [Deformation(f, s=f.p ** j) for j in range(1, f.k)]


# the exhaustive-property field set: GF(4), GF(8), GF(9), GF(16), GF(27)
PROPERTY_FIELDS = [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)]


def property_deformations():
    out = []
    for p, k in PROPERTY_FIELDS:
        out.extend(frobenius_deformations(field(p, k)))
    return out


def deformation_id(d):
    return f"GF({d.ctx.order})/{d.spec_string()}"


def check_product_rule(d):
    bad = []
    els = list(d.ctx.elements())
    for f in els:
        df = d.derivative(f)
        for g in els:
            dg = d.derivative(g)
            lhs = d.derivative(f * g)
            if lhs != d.shift(g) * df + f * dg:
                bad.append(f"form 1: f={f} g={g}")
            if lhs != g * df + d.shift(f) * dg:
                bad.append(f"form 2: f={f} g={g}")
    return bad


def check_quotient_rule(d):
    bad = []
    ctx = d.ctx
    els = list(ctx.elements())
    for f in els:
        df = d.derivative(f)
        for g in els:
            if not g:
                continue
            dg = d.derivative(g)
            lhs = d.derivative(f / g)
            denom = ctx.inv(g * d.shift(g))
            if lhs != (g * df - f * dg) * denom:
                bad.append(f"form 1: f={f} g={g}")
            if lhs != (d.shift(g) * df - d.shift(f) * dg) * denom:
                bad.append(f"form 2: f={f} g={g}")
    return bad


def check_chain_rule(d):
    # D(x^(mn)) at theta = ([m] x^(m-1))(theta^n) * D(x^n)(theta)
    bad = []
    ctx = d.ctx
    m_ord = ctx.order - 1
    for n in range(m_ord):
        tn = ctx.theta(n)
        dn = d.derivative(tn)
        for m in range(m_ord):
            lhs = d.derivative(ctx.theta(m * n))
            inner = d.q_number_at(m, tn) * ctx.pow(tn, m - 1)
            if lhs != inner * dn:
                bad.append(f"m={m} n={n}")
    return bad


def check_qnumber_recurrences(d):
    bad = []
    ctx = d.ctx
    q_theta = ctx.theta(d.q_exp)
    for n in range(ctx.order - 1):
        if d.q_number(n + 1) != ctx.one + q_theta * d.q_number(n):
            bad.append(f"[n+1] = 1 + q[n] fails at n={n}")
        if d.q_number(n + 1) - d.q_number(n) != ctx.pow(q_theta, n):
            bad.append(f"[n+1] - [n] = q^n fails at n={n}")
    return bad


def check_constant_scaling(d):
    bad = []
    for m in d.constants():
        for f in d.ctx.elements():
            if d.derivative(m * f) != m * d.derivative(f):
                bad.append(f"m={m} f={f}")
    return bad


def check_brackets(d):
    bad = []
    for f in d.ctx.elements():
        if d.mq_bracket(f) != d.shift(f):
            bad.append(f"[D,x.] != M at {f}")
        if d.q_bracket(f) != f:
            bad.append(f"[D,x.]_q != id at {f}")
    return bad


def check_hamiltonian(d):
    bad = []
    ctx = d.ctx
    for n in range(ctx.order - 1):
        tn = ctx.theta(n)
        if d.hamiltonian(tn) != d.energy(n) * tn:
            bad.append(f"n={n}")
    if d.hamiltonian(ctx.zero) != ctx.zero:
        bad.append("zero")
    return bad


def check_antiderivative(d):
    bad = []
    ctx = d.ctx
    op = d.operator_matrix()
    kernel_size = ctx.p ** len(op.kernel_basis)
    image = {d.derivative(f) for f in ctx.elements()}
    if len(image) * kernel_size != ctx.order:
        bad.append("|image| * |kernel| != p^k")
    if kernel_size < ctx.p:
        bad.append("|kernel| < p")
    for f in ctx.elements():
        anti = d.antiderivative(f)
        if f in image:
            if anti is None:
                bad.append(f"no antiderivative returned for image element {f}")
            elif d.derivative(anti) != f:
                bad.append(f"D(antiderivative({f})) != {f}")
        elif anti is not None:
            bad.append(f"antiderivative for non-image element {f}")
    constants = d.constants()
    for f in image:
        anti = d.antiderivative(f)
        others = [g for g in ctx.elements() if d.derivative(g) == f]
        for g in others:
            if (g - anti) not in constants:
                bad.append(f"solutions of D=.{f} not constant-shifted")
    return bad


def check_fitting(d):
    bad = []
    ctx = d.ctx
    op = d.operator_matrix()
    nil_dim = len(op.generalized_kernel_basis)
    per_dim = len(op.periodic_basis)
    if nil_dim + per_dim != ctx.k:
        bad.append("nilpotent + periodic dims != k")
    for b in op.generalized_kernel_basis:
        if d.derivative_power(b, nil_dim):
            bad.append(f"D^{nil_dim} does not kill {b}")
    periods = d.classify_trig()
    if periods:
        # multiplicative order of D restricted to the periodic part
        order = 1
        while not all(d.derivative_power(b, order) == b for b in op.periodic_basis):
            order += 1
            assert order <= ctx.order
        for f, m in periods.items():
            if order % m:
                bad.append(f"period {m} of {f} does not divide restricted order {order}")
    chain = d.nilpotent_basis()
    span = {v for v in _span(chain, ctx)}
    gen = {v for v in _span(op.generalized_kernel_basis, ctx)}
    if not span <= gen:
        bad.append("chain leaves the generalized kernel")
    return bad


def _span(basis, ctx):
    from itertools import product as iproduct
    for coeffs in iproduct(range(ctx.p), repeat=len(basis)):
        v = ctx.zero
        for c, b in zip(coeffs, basis):
            for _ in range(c):
                v = v + b
        yield v


def check_inner_product(d):
    bad = []
    chain = d.nilpotent_basis()
    for i, u in enumerate(chain):
        for j, v in enumerate(chain):
            got = d.inner_product(u, v)
            if got != (1 if i == j else 0):
                bad.append(f"<b{i}, b{j}> = {got}")
    return bad


def check_exp_power_law(d):
    """D(exp^m) = ([m] x^m)(exp) for every m; plus one witness where the
    naive [m] x^(me+m-1) guess differs."""
    bad = []
    ctx = d.ctx
    exps = sorted(d.find_exp())
    if not exps:
        return bad, None
    e = exps[0]
    exp_el = ctx.theta(e)
    witness = None
    for m in range(ctx.order - 1):
        power = ctx.pow(exp_el, m)
        lhs = d.derivative(power)
        rhs = d.q_number_at(m, exp_el) * power
        if lhs != rhs:
            bad.append(f"exp power law fails at m={m}")
        naive = d.q_number(m) * ctx.theta(m * e + m - 1)
        if witness is None and lhs != naive:
            witness = m
    return bad, witness


def check_log_derivative_sum_rule(d):
    bad = []
    ctx = d.ctx
    q_theta = ctx.theta(d.q_exp)
    m_ord = ctx.order - 1
    for n in range(m_ord):
        ldn = d.log_derivative(ctx.theta(n))
        for m in range(m_ord):
            ldm = d.log_derivative(ctx.theta(m))
            lhs = d.log_derivative(ctx.theta(n + m))
            if lhs != ctx.pow(q_theta, n) * ldm + ldn:
                bad.append(f"q^n form fails at n={n} m={m}")
            if lhs != ldm + ctx.pow(q_theta, m) * ldn:
                bad.append(f"q^m form fails at n={n} m={m}")
    return bad
