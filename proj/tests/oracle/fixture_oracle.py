#!/usr/bin/env python3
"""Reference evaluation of the built-in 3-agent fixture.

Written independently of the C++ library: plain dictionaries keyed by date,
no shared helpers. Prints every normalized value, S, P and A for both market
kinds and all three time-scales as JSON; the C++ test freezes these numbers.

Conventions followed:
  * price = open; weekly buckets keyed by ISO-week Monday, monthly by first
    of month; open/cap taken from the first observation, volume summed
  * min-max per agent per channel over the window, constant -> 0.5
  * differences are between consecutive observations of the same series
  * system perturbation = mean over agents defined at the period
  * crypto afp: raw abs diffs averaged, then the system series min-max'd
  * afn: |S| of the previous observation
  * afx: normalized VIX level; af3m: mean of abs diffs of normalized indexes
  * performance on raw daily values of 2014; population std; age from the
    first observation to 2014-12-31
"""
import datetime as dt
import json
import sys

AGENTS = {
    "AAA": [("2014-01-06", 10, 100, 1000), ("2014-01-14", 12, 150, 1250),
            ("2014-01-22", 11, 120, 1100), ("2014-02-03", 15, 200, 1500),
            ("2014-02-12", 14, 90, 1400)],
    "BBB": [("2014-01-06", 50, 300, 5000), ("2014-01-14", 49, 280, 4900),
            ("2014-01-22", 53, 400, 5300), ("2014-02-03", 52, 350, 5150),
            ("2014-02-12", 60, 500, 6000)],
    "CCC": [("2014-01-06", 7, 40, 700), ("2014-01-14", 7, 45, 700),
            ("2014-01-22", 7, 40, 700), ("2014-02-03", 7, 50, 700),
            ("2014-02-13", 7, 60, 700)],
}
INDEX_DATES = ["2014-01-06", "2014-01-14", "2014-01-22", "2014-02-03", "2014-02-12"]
INDEXES = {
    "VIX": [13.5, 12.9, 14.8, 18.4, 15.2],
    "NASDAQ": [4113.3, 4183.0, 4243.0, 3996.96, 4201.29],
    "DJI": [16425.1, 16373.9, 16373.3, 15372.8, 15994.8],
    "SPX": [1826.77, 1838.88, 1844.86, 1741.89, 1819.26],
}


def bucket(datestr, scale):
    d = dt.date.fromisoformat(datestr)
    if scale == 0:
        return d.isoformat()
    if scale == 1:
        return (d - dt.timedelta(days=d.isoweekday() - 1)).isoformat()
    return d.replace(day=1).isoformat()


def resample(rows, scale):
    """rows: list of (date, open, volume, cap). Returns ordered list."""
    out = {}
    for date, o, v, m in rows:
        key = bucket(date, scale)
        if key not in out:
            out[key] = [o, 0.0, m]
        out[key][1] += v
    return [(k, out[k][0], out[k][1], out[k][2]) for k in sorted(out)]


def minmax(xs):
    lo, hi = min(xs), max(xs)
    if hi == lo:
        return [0.5 for _ in xs]
    return [(x - lo) / (hi - lo) for x in xs]


def evaluate(kind, scale):
    res = {"normalized": {}, "S": {}, "P": {}, "A": {}}
    price, vol, cap, raw_open = {}, {}, {}, {}
    for aid, rows in AGENTS.items():
        rs = resample(rows, scale)
        if len(rs) < 2:
            continue
        dates = [r[0] for r in rs]
        raw_open[aid] = dict(zip(dates, [r[1] for r in rs]))
        price[aid] = dict(zip(dates, minmax([r[1] for r in rs])))
        vol[aid] = dict(zip(dates, minmax([r[2] for r in rs])))
        if kind == "crypto":
            cap[aid] = dict(zip(dates, minmax([r[3] for r in rs])))
        res["normalized"][aid] = {
            "price": price[aid], "volume": vol[aid],
            **({"market_cap": cap[aid]} if kind == "crypto" else {}),
        }

    def diffs(series):
        keys = sorted(series)
        return {keys[j]: series[keys[j]] - series[keys[j - 1]] for j in range(1, len(keys))}

    S = {aid: diffs(price[aid]) for aid in price}
    res["S"] = S

    def system_mean(per_agent):
        acc = {}
        for aid in sorted(per_agent):
            for d, val in per_agent[aid].items():
                acc.setdefault(d, []).append(val)
        return {d: sum(vs) / len(vs) for d, vs in sorted(acc.items())}

    P = {}
    if kind == "stock":
        P["afp"] = system_mean({a: {d: abs(x) for d, x in diffs(price[a]).items()} for a in price})
        P["afv"] = system_mean({a: {d: abs(S[a][d] + dv) / 2 for d, dv in diffs(vol[a]).items()}
                                for a in price})
        idx = {}
        for name, levels in INDEXES.items():
            rows = [(d, lv, 0.0, None) for d, lv in zip(INDEX_DATES, levels)]
            rs = resample(rows, scale)
            idx[name] = dict(zip([r[0] for r in rs], minmax([r[1] for r in rs])))
        P["afx"] = dict(idx["VIX"])
        d3 = [{d: abs(x) for d, x in diffs(idx[n]).items()} for n in ("NASDAQ", "DJI", "SPX")]
        common = sorted(set(d3[0]) & set(d3[1]) & set(d3[2]))
        P["af3m"] = {d: (d3[0][d] + d3[1][d] + d3[2][d]) / 3 for d in common}
    else:
        rawp = system_mean({a: {d: abs(x) for d, x in diffs(raw_open[a]).items()} for a in price})
        P["afp"] = dict(zip(rawp.keys(), minmax(list(rawp.values()))))
        P["afv"] = system_mean({a: {d: abs(x) for d, x in diffs(vol[a]).items()} for a in price})
        P["afm"] = system_mean({a: {d: abs(x) for d, x in diffs(cap[a]).items()} for a in price})
        lagged = {}
        for a in price:
            keys = sorted(S[a])
            lagged[a] = {keys[j]: abs(S[a][keys[j - 1]]) for j in range(1, len(keys))}
        P["afn"] = system_mean(lagged)
    res["P"] = P

    for m, pm in P.items():
        res["A"][m] = {}
        for a in sorted(S):
            inst = {d: S[a][d] * pm[d] for d in sorted(S[a]) if d in pm}
            if not inst:
                continue
            res["A"][m][a] = {"instants": inst, "global": sum(inst.values()) / len(inst),
                              "n_used": len(inst)}
    return res


def performance(kind):
    out = {}
    end = dt.date(2014, 12, 31)
    for aid, rows in AGENTS.items():
        rec = {"age": float((end - dt.date.fromisoformat(rows[0][0])).days)}
        channels = [("pr", 1), ("vl", 2)] + ([("mk", 3)] if kind == "crypto" else [])
        for tag, col in channels:
            xs = [float(r[col]) for r in rows]
            mean = sum(xs) / len(xs)
            if mean != 0:
                rec["pct_dlt_" + tag] = (max(xs) - min(xs)) / mean
                rec["pct_%s_f_i" % tag] = (xs[-1] - xs[0]) / mean
            rec[tag + "_mea"] = mean
            if tag == "pr":
                rec["pr_std"] = (sum((x - mean) ** 2 for x in xs) / len(xs)) ** 0.5
        out[aid] = rec
    return out


def main():
    out = {kind: {str(scale): evaluate(kind, scale) for scale in (0, 1, 2)}
           for kind in ("stock", "crypto")}
    for kind in ("stock", "crypto"):
        out[kind]["performance"] = performance(kind)
    json.dump(out, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
