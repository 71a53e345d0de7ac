package corpus.fib;

public class Series {

    public static long factorial(int n) {
        if (n <= 1) {
            return 1;
        }
        return n * factorial(n - 1);
    }

    public static int sumTo(int n) {
        int sum = 0;
        for (int i = 1; i <= n; i++) {
            sum = sum + i;
        }
        return sum;
    }

    public static int[] prefixSums(int[] values) {
        int[] out = new int[values.length];
        int running = 0;
        for (int i = 0; i < values.length; i++) {
            running += values[i];
            out[i] = running;
        }
        return out;
    }

    public static long triangular(int n) {
        return (long) n * (n + 1) / 2;
    }

    public static int tribonacciLike(int a, int b, int c) {
        return a + b + c;
    }

    public static int[] arithmetic(int start, int step, int count) {
        int[] seq = new int[count];
        for (int i = 0; i < count; i++) {
            seq[i] = start + i * step;
        }
        return seq;
    }

    public static long pow2(int n) {
        long result = 1;
        for (int i = 0; i < n; i++) {
            result = result + result;
        }
        return result;
    }

    public static int countPaths(int n) {
        if (n <= 0) {
            return n == 0 ? 1 : 0;
        }
        return countPaths(n - 1) + countPaths(n - 2) + countPaths(n - 3);
    }

    public static void swapPairs(int[] a) {
        int first = 0;
        int second = 1;
        while (second < a.length) {
            int t = a[first];
            a[first] = a[second];
            a[second] = t;
            first = first + 2;
            second = second + 2;
        }
    }

    public static int[] pascalRow(int n) {
        int[] row = new int[n + 1];
        row[0] = 1;
        for (int i = 1; i <= n; i++) {
            for (int j = i; j > 0; j--) {
                row[j] = row[j] + row[j - 1];
            }
        }
        return row;
    }
}
