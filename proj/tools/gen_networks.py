#!/usr/bin/env python3
"""Regenerates data/networks/*.net from published layer shapes (fp64 elements)."""
import os

ELEM = 8
OUT = os.path.join(os.path.dirname(__file__), "..", "data", "networks")


def conv(name, cin, hin, win, cout, k, hout, wout, groups=1):
    params = cout * (k * k * cin // groups) + cout
    return (name, "conv", cin * hin * win, params, cout * hout * wout,
            f"{cin}x{hin}x{win} -> {cout}x{hout}x{wout}, k={k}" + (f", groups={groups}" if groups > 1 else ""))


def pool(name, c, hin, win, hout, wout):
    return (name, "pool", c * hin * win, 0, c * hout * wout, f"{c}x{hin}x{win} -> {c}x{hout}x{wout}")


def fc(name, nin, nout):
    return (name, "classifier", nin, nin * nout + nout, nout, f"{nin} -> {nout}")


def block(name, cin, h, cout, params, hout=None):
    hout = hout or h
    return (name, "conv", cin * h * h, params, cout * hout * hout,
            f"{cin}x{h}x{h} -> {cout}x{hout}x{hout}, {params} params (module aggregate)")


alexnet = [
    conv("conv1", 3, 227, 227, 96, 11, 55, 55),
    pool("pool1", 96, 55, 55, 27, 27),
    conv("conv2", 96, 27, 27, 256, 5, 27, 27, groups=2),
    pool("pool2", 256, 27, 27, 13, 13),
    conv("conv3", 256, 13, 13, 384, 3, 13, 13),
    conv("conv4", 384, 13, 13, 384, 3, 13, 13, groups=2),
    conv("conv5", 384, 13, 13, 256, 3, 13, 13, groups=2),
    pool("pool5", 256, 13, 13, 6, 6),
    fc("fc6", 9216, 4096),
    fc("fc7", 4096, 4096),
    fc("fc8", 4096, 1000),
]

# LeNet-5 parameter set on a 100x100 character image; a global pool feeds the
# C5/F6/output classifier tail.
lenet = [
    conv("c1", 1, 100, 100, 6, 5, 96, 96),
    pool("s2", 6, 96, 96, 48, 48),
    conv("c3", 6, 48, 48, 16, 5, 44, 44),
    pool("s4", 16, 44, 44, 22, 22),
    pool("gpool", 16, 22, 22, 5, 5),
    fc("c5", 400, 120),
    fc("f6", 120, 84),
    fc("out", 84, 10),
]

# GoogLeNet with each inception module aggregated into one layer
# (parameter counts from the published per-module table).
googlenet = [
    block("conv1", 3, 224, 64, 9472, 112),
    pool("pool1", 64, 112, 112, 56, 56),
    block("conv2", 64, 56, 192, 114944),
    pool("pool2", 192, 56, 56, 28, 28),
    block("inception3a", 192, 28, 256, 163696),
    block("inception3b", 256, 28, 480, 388736),
    pool("pool3", 480, 28, 28, 14, 14),
    block("inception4a", 480, 14, 512, 376176),
    block("inception4b", 512, 14, 512, 449160),
    block("inception4c", 512, 14, 512, 510104),
    block("inception4d", 512, 14, 528, 605376),
    block("inception4e", 528, 14, 832, 868352),
    pool("pool4", 832, 14, 14, 7, 7),
    block("inception5a", 832, 7, 832, 1043456),
    block("inception5b", 832, 7, 1024, 1444080),
    pool("avgpool", 1024, 7, 7, 1, 1),
    fc("fc", 1024, 1000),
]

for name, layers in (("alexnet", alexnet), ("lenet", lenet), ("googlenet", googlenet)):
    with open(os.path.join(OUT, name + ".net"), "w") as f:
        f.write(f"# {name}: fp64 elements ({ELEM} bytes); generated by tools/gen_networks.py\n")
        f.write("# layer kind input_fmap_bytes weight_bytes output_fmap_bytes\n")
        f.write(f"network {name}\n")
        for lname, kind, inp, w, out, note in layers:
            f.write(f"{lname} {kind} {inp * ELEM} {w * ELEM} {out * ELEM}  # {note}\n")
    params = sum(l[3] for l in layers)
    print(name, "params", params)
