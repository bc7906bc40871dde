#!/usr/bin/env python3
"""Generate neural-network workload descriptors for `fenc workloads`.

Each descriptor lists, per layer, the number of weight bits (kernel elements
times precision; biases and batch-norm parameters are excluded) and the number
of output-activation bits for a batch of one at the network's standard input
resolution. Layer shapes follow the standard published definitions of each
architecture.

    python3 scripts/gen_workloads.py --out workloads --precision 8

With --check, weight counts are cross-checked against torchvision's model
definitions (AlexNet, ResNet-18) when torchvision is importable. GoogLeNet is
not compared: torchvision's Inception blocks use a 3x3 kernel in the 5x5
branch, so its count differs from the original architecture.
"""
import argparse
import json
import math
import os


def conv_out(size, kernel, stride, pad):
    return (size + 2 * pad - kernel) // stride + 1


class Net:
    def __init__(self, name, h, w, c, source):
        self.name = name
        self.h, self.w, self.c = h, w, c
        self.source = source
        self.layers = []

    def conv(self, name, k, filters, stride=1, pad=None, groups=1, inp=None, keep=False):
        """Append a conv layer. `inp` overrides the (h, w, c) input; `keep`
        leaves the running shape untouched (for parallel branches)."""
        h, w, c = inp if inp else (self.h, self.w, self.c)
        if pad is None:
            pad = k // 2
        oh, ow = conv_out(h, k, stride, pad), conv_out(w, k, stride, pad)
        weights = k * k * (c // groups) * filters
        self.layers.append({"name": name, "weights": weights, "outputs": oh * ow * filters})
        if not keep:
            self.h, self.w, self.c = oh, ow, filters
        return oh, ow, filters

    def pool(self, k, stride, pad=0, ceil=False):
        f = math.ceil if ceil else math.floor
        self.h = int(f((self.h + 2 * pad - k) / stride)) + 1
        self.w = int(f((self.w + 2 * pad - k) / stride)) + 1

    def fc(self, name, outputs):
        inputs = self.h * self.w * self.c
        self.layers.append({"name": name, "weights": inputs * outputs, "outputs": outputs})
        self.h, self.w, self.c = 1, 1, outputs


def alexnet():
    n = Net("alexnet", 224, 224, 3, "torchvision AlexNet (single-tower), 224x224 input")
    n.conv("conv1", 11, 64, stride=4, pad=2)
    n.pool(3, 2)
    n.conv("conv2", 5, 192)
    n.pool(3, 2)
    n.conv("conv3", 3, 384)
    n.conv("conv4", 3, 256)
    n.conv("conv5", 3, 256)
    n.pool(3, 2)
    n.h, n.w = 6, 6
    n.fc("fc6", 4096)
    n.fc("fc7", 4096)
    n.fc("fc8", 1000)
    return n


def mobilenet():
    n = Net("mobilenet", 224, 224, 3, "MobileNet v1 (width 1.0), 224x224 input")
    n.conv("conv1", 3, 32, stride=2)
    plan = [(64, 1), (128, 2), (128, 1), (256, 2), (256, 1), (512, 2),
            (512, 1), (512, 1), (512, 1), (512, 1), (512, 1), (1024, 2), (1024, 1)]
    for i, (filters, stride) in enumerate(plan, start=2):
        n.conv(f"conv{i}_dw", 3, n.c, stride=stride, groups=n.c)
        n.conv(f"conv{i}_pw", 1, filters)
    n.h, n.w = 1, 1
    n.fc("fc", 1000)
    return n


def googlenet():
    n = Net("googlenet", 224, 224, 3, "GoogLeNet / Inception v1, 224x224 input")
    n.conv("conv1", 7, 64, stride=2)
    n.pool(3, 2, ceil=True)
    n.conv("conv2_reduce", 1, 64)
    n.conv("conv2", 3, 192)
    n.pool(3, 2, ceil=True)

    def inception(tag, b1, b3r, b3, b5r, b5, bp):
        shape = (n.h, n.w, n.c)
        n.conv(f"{tag}_1x1", 1, b1, inp=shape, keep=True)
        n.conv(f"{tag}_3x3_reduce", 1, b3r, inp=shape, keep=True)
        n.conv(f"{tag}_3x3", 3, b3, inp=(n.h, n.w, b3r), keep=True)
        n.conv(f"{tag}_5x5_reduce", 1, b5r, inp=shape, keep=True)
        n.conv(f"{tag}_5x5", 5, b5, inp=(n.h, n.w, b5r), keep=True)
        n.conv(f"{tag}_pool_proj", 1, bp, inp=shape, keep=True)
        n.c = b1 + b3 + b5 + bp

    inception("3a", 64, 96, 128, 16, 32, 32)
    inception("3b", 128, 128, 192, 32, 96, 64)
    n.pool(3, 2, ceil=True)
    inception("4a", 192, 96, 208, 16, 48, 64)
    inception("4b", 160, 112, 224, 24, 64, 64)
    inception("4c", 128, 128, 256, 24, 64, 64)
    inception("4d", 112, 144, 288, 32, 64, 64)
    inception("4e", 256, 160, 320, 32, 128, 128)
    n.pool(2, 2, ceil=True)
    inception("5a", 256, 160, 320, 32, 128, 128)
    inception("5b", 384, 192, 384, 48, 128, 128)
    n.h, n.w = 1, 1
    n.fc("fc", 1000)
    return n


def resnet18():
    n = Net("resnet18", 224, 224, 3, "ResNet-18, 224x224 input")
    n.conv("conv1", 7, 64, stride=2, pad=3)
    n.pool(3, 2, pad=1)
    for stage, filters in enumerate([64, 128, 256, 512], start=2):
        for block in range(2):
            stride = 2 if (stage > 2 and block == 0) else 1
            shape = (n.h, n.w, n.c)
            tag = f"conv{stage}_{block + 1}"
            n.conv(f"{tag}a", 3, filters, stride=stride)
            n.conv(f"{tag}b", 3, filters)
            if stride != 1:
                n.conv(f"{tag}_downsample", 1, filters, stride=stride, pad=0, inp=shape, keep=True)
    n.h, n.w = 1, 1
    n.fc("fc", 1000)
    return n


def faster_rcnn():
    n = Net("fasterrcnn", 600, 800, 3,
            "Faster R-CNN: VGG-16 conv backbone + RPN, 600x800 input; "
            "detection head excluded (proposal-dependent)")
    for stage, (filters, reps) in enumerate([(64, 2), (128, 2), (256, 3), (512, 3), (512, 3)], start=1):
        for r in range(reps):
            n.conv(f"conv{stage}_{r + 1}", 3, filters)
        if stage < 5:
            n.pool(2, 2)
    n.conv("rpn_conv", 3, 512)
    n.conv("rpn_cls", 1, 18, keep=True)
    n.conv("rpn_bbox", 1, 36, keep=True)
    return n


def yolo_tiny():
    n = Net("yolo_tiny", 416, 416, 3, "Tiny YOLOv2 (VOC, 125-channel head), 416x416 input")
    for i, filters in enumerate([16, 32, 64, 128, 256, 512], start=1):
        n.conv(f"conv{i}", 3, filters)
        if i < 6:
            n.pool(2, 2)
    n.conv("conv7", 3, 1024)
    n.conv("conv8", 3, 1024)
    n.conv("conv9", 1, 125)
    return n


NETWORKS = [alexnet, mobilenet, faster_rcnn, googlenet, resnet18, yolo_tiny]


def descriptor(net, precision):
    return {
        "name": net.name,
        "precision_bits": precision,
        "source": net.source,
        "generator": "scripts/gen_workloads.py",
        "layers": [
            {"name": l["name"], "weight_bits": l["weights"] * precision,
             "output_bits": l["outputs"] * precision}
            for l in net.layers
        ],
    }


def check_against_torchvision(nets):
    try:
        import torchvision.models as tvm
    except ImportError:
        print("torchvision not available; skipping cross-check")
        return
    import torch.nn as nn

    def kernel_params(model):
        return sum(m.weight.numel() for m in model.modules()
                   if isinstance(m, (nn.Conv2d, nn.Linear)))

    refs = {"alexnet": tvm.alexnet(), "resnet18": tvm.resnet18()}
    for net in nets:
        if net.name in refs:
            ours = sum(l["weights"] for l in net.layers)
            theirs = kernel_params(refs[net.name])
            status = "ok" if ours == theirs else "MISMATCH"
            print(f"{net.name}: {ours} kernel weights vs torchvision {theirs} [{status}]")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="workloads")
    ap.add_argument("--precision", type=int, default=8)
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args()
    nets = [f() for f in NETWORKS]
    os.makedirs(args.out, exist_ok=True)
    for net in nets:
        path = os.path.join(args.out, f"{net.name}.json")
        with open(path, "w") as fh:
            json.dump(descriptor(net, args.precision), fh, indent=2)
            fh.write("\n")
        w = sum(l["weights"] for l in net.layers)
        o = sum(l["outputs"] for l in net.layers)
        print(f"{path}: {len(net.layers)} layers, {w} weights, {o} outputs")
    if args.check:
        check_against_torchvision(nets)


if __name__ == "__main__":
    main()
