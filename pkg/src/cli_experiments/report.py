# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
实验报告：行数据写入 CSV（元数据另存 JSON）或整体写入一个 JSON 文档
"""

import csv
import json
import logging
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum

import numpy as np

from src.core import __version__
from src.core.errors import PreconditionError

logger = logging.getLogger(__name__)

META_SUFFIX = ".meta.json"


def make_json_safe(value):
    """把 numpy 标量、枚举、无穷大等转换成可 JSON 序列化且可逆的值（∞ 写作 "inf"）"""
    if isinstance(value, dict):
        return {str(k): make_json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [make_json_safe(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": make_json_safe(value.real), "im": make_json_safe(value.imag)}
    if value is None or isinstance(value, str):
        return value
    return str(value)


def _csv_cell(value):
    value = make_json_safe(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False)
    return "" if value is None else value


@dataclass
class ExperimentReport:
    """Rows produced by one CLI command, with the inputs and run metadata."""

    command: str
    inputs: dict
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.metadata.setdefault("version", __version__)
        self.metadata.setdefault("timestamp", datetime.now(timezone.utc).isoformat(timespec="seconds"))

    @classmethod
    def create(cls, command, inputs, rows, seed=None, config=None):
        if not rows:
            raise PreconditionError(f"{command} produced no rows")
        metadata = {"seed": seed, "config": config or {}}
        return cls(command, dict(inputs), list(rows), metadata)

    @property
    def columns(self):
        names = []
        for row in self.rows:
            names.extend(k for k in row if k not in names)
        return names

    def to_dict(self):
        return make_json_safe({
            "command": self.command,
            "inputs": self.inputs,
            "rows": self.rows,
            "metadata": self.metadata,
        })

    @staticmethod
    def from_dict(data):
        return ExperimentReport(
            command=data["command"],
            inputs=data.get("inputs", {}),
            rows=data.get("rows", []),
            metadata=data.get("metadata", {}),
        )

    def save(self, out, fmt="csv"):
        """保存报告

        Args:
            out: 输出路径
            fmt: "csv"（行数据 CSV + out.meta.json）或 "json"（单个 JSON 文档）

        Returns:
            list: 写出的文件路径
        """
        directory = os.path.dirname(os.path.abspath(out))
        os.makedirs(directory, exist_ok=True)
        if fmt == "json":
            with open(out, 'w', encoding='utf-8') as f:
                json.dump(self.to_dict(), f, indent=4, ensure_ascii=False)
            logger.info("Report %s saved to %s", self.command, out)
            return [out]
        if fmt != "csv":
            raise PreconditionError(f"unknown report format {fmt!r}")

        with open(out, 'w', encoding='utf-8', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=self.columns)
            writer.writeheader()
            for row in self.rows:
                writer.writerow({k: _csv_cell(v) for k, v in row.items()})
        sidecar = out + META_SUFFIX
        meta = self.to_dict()
        meta.pop("rows")
        with open(sidecar, 'w', encoding='utf-8') as f:
            json.dump(meta, f, indent=4, ensure_ascii=False)
        logger.info("Report %s saved to %s (%d rows) and %s", self.command, out, len(self.rows), sidecar)
        return [out, sidecar]

    @staticmethod
    def load(path):
        """读取 save 写出的报告；CSV 的单元格以字符串形式返回"""
        if not os.path.exists(path + META_SUFFIX):
            with open(path, 'r', encoding='utf-8') as f:
                return ExperimentReport.from_dict(json.load(f))
        with open(path + META_SUFFIX, 'r', encoding='utf-8') as f:
            meta = json.load(f)
        with open(path, 'r', encoding='utf-8', newline='') as f:
            meta["rows"] = list(csv.DictReader(f))
        return ExperimentReport.from_dict(meta)
